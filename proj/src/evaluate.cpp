#include "hahn/evaluate.hpp"

#include "hahn/errors.hpp"
#include "hahn/integration.hpp"
#include "hahn/render.hpp"

namespace hahn {

namespace {

[[noreturn]] void reject(const Expr& e, const std::string& message) {
  throw ParseError(message, e.line, e.column);
}

/// (1 + ε)^q = Σ binom(q, n) ε^n.
template <class S>
S binomial_series(const S& eps, const Rational& q, std::size_t max_terms) {
  std::vector<Rational> coefficients(max_terms);
  Rational c = 1;
  for (std::size_t n = 0; n < max_terms; ++n) {
    coefficients[n] = c;
    c = c * (q - static_cast<long>(n)) / static_cast<long>(n + 1);
  }
  return power_series(eps, coefficients, max_terms);
}

template <class S>
class Evaluator {
 public:
  using Exp = typename S::ExponentType;

  explicit Evaluator(const EvalContext& context) : c_(context) {}

  S eval(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::number:
        return S::constant(e.value, c_.spine);
      case Expr::Kind::symbol: {
        SpineIndex i{e.label};
        if (!c_.spine || !c_.spine->contains(i)) {
          reject(e, "t" + std::to_string(e.label) + " is not a label of the spine");
        }
        return S::monomial(exponent(Exponent::unit(i)), 1, c_.spine);
      }
      case Expr::Kind::el_monomial:
        return el_monomial(e);
      case Expr::Kind::power:
        return power(eval(e.children[0]), e.value);
      case Expr::Kind::neg:
        return -eval(e.children[0]);
      case Expr::Kind::add:
        return eval(e.children[0]) + eval(e.children[1]);
      case Expr::Kind::sub:
        return eval(e.children[0]) - eval(e.children[1]);
      case Expr::Kind::mul:
        return eval(e.children[0]) * eval(e.children[1]);
      case Expr::Kind::div:
        return divide(eval(e.children[0]), eval(e.children[1]), c_.max_terms);
      case Expr::Kind::big_o: {
        S m = eval(e.children[0]);
        if (!m.exact() || m.size() != 1 || m.leading().coefficient != 1) {
          reject(e, "O(...) takes a single monomial");
        }
        return S::big_o(m.leading().exponent, c_.spine);
      }
      case Expr::Kind::call:
        return call(e, eval(e.children[0]));
    }
    reject(e, "unknown expression");
  }

 private:
  Exp exponent(const Exponent& alpha) const {
    if constexpr (std::is_same_v<S, Series>) {
      return alpha;
    } else {
      return c_.tower->exponent(alpha);
    }
  }

  S el_monomial(const Expr& e) const {
    if constexpr (std::is_same_v<S, Series>) {
      reject(e, "t^{...} needs a field with an exponential-logarithmic tower");
    } else {
      S payload = eval(e.children[0]);
      return S::monomial(c_.tower->from_log(payload), 1, c_.spine);
    }
  }

  S power(const S& a, const Rational& q) const {
    if (a.exact() && a.size() == 1) {
      const auto& t = a.leading();
      if (q.get_den() == 1) {
        mpq_class c = 1;
        mpq_class base = t.coefficient;
        long n = q.get_num().get_si();
        if (n < 0) base = 1 / base;
        for (long k = 0; k < std::abs(n); ++k) c *= base;
        return S::monomial(scale_exponent(t.exponent, q), c, c_.spine);
      }
    }
    if (q.get_den() == 1) return pow(a, q.get_num().get_si(), c_.max_terms);
    if (a.no_known_terms() || a.leading().coefficient != 1) {
      throw DomainError("fractional powers need leading coefficient 1");
    }
    const auto& lead = a.leading();
    S unit = a * S::monomial(-lead.exponent, 1, a.spine());
    S eps = unit - S::constant(1, a.spine());
    return S::monomial(scale_exponent(lead.exponent, q), 1, c_.spine) *
           binomial_series(eps, q, c_.max_terms);
  }

  const DerivationSpec& derivation(const Expr& e) const {
    if (!c_.derivation) reject(e, e.name + "(...) is not available here");
    return *c_.derivation;
  }

  S call(const Expr& e, const S& a) const {
    const std::string& f = e.name;
    if constexpr (std::is_same_v<S, Series>) {
      if (f == "d") return derive(a, derivation(e));
      if (f == "ai") {
        if (a.no_known_terms()) throw DomainError("asymptotic integral of zero");
        return monomial_ai(a, derivation(e));
      }
      if (f == "int") return integral(integrate(a, derivation(e), c_.max_terms, c_.max_terms), derivation(e));
      if (f == "exp") return exp_series(a, c_.hooks, c_.max_terms);
      if (f == "log") {
        if (!c_.prelog) reject(e, "log(...) needs a pre-logarithm");
        return log_series(a, *c_.prelog, c_.hooks, c_.max_terms);
      }
    } else {
      derivation(e);
      if (f == "d") return derive_el(a, *c_.tower);
      if (f == "ai") {
        if (a.no_known_terms()) throw DomainError("asymptotic integral of zero");
        auto m = asymptotic_integral_el(a, *c_.tower, c_.max_terms);
        if (!m) throw DomainError("no asymptotic integral found");
        return *m;
      }
      if (f == "int") return integral(integrate_el(a, *c_.tower, c_.max_terms, c_.max_terms), derivation(e));
      if (f == "exp") return exp_el(a, *c_.tower, c_.max_terms);
      if (f == "log") return log_el(a, *c_.tower, c_.max_terms);
    }
    reject(e, "unknown function " + f);
  }

  template <class Result>
  S integral(const Result& r, const DerivationSpec& spec) const {
    if (r.status == IntegrationStatus::non_integrable) {
      throw NoAsymptoticIntegral("the residual " + render(r.residual) + " has no asymptotic integral");
    }
    if constexpr (std::is_same_v<S, Series>) {
      return bounded_integral(r, spec);
    } else {
      return bounded_integral(r, *c_.tower, c_.max_terms);
    }
  }

  const EvalContext& c_;
};

}  // namespace

Series bounded_integral(const IntegrationResult& r, const DerivationSpec& spec) {
  if (r.status != IntegrationStatus::budget_exhausted) return r.value;
  try {
    return r.value.with_cutoff(monomial_ai(r.residual, spec).valuation());
  } catch (const Error&) {
    return r.value.with_approximate(true);
  }
}

ELSeries bounded_integral(const ELIntegrationResult& r, const Tower& tower, std::size_t max_terms) {
  if (r.status != IntegrationStatus::budget_exhausted) return r.value;
  try {
    if (auto m = asymptotic_integral_el(r.residual, tower, max_terms)) {
      return r.value.with_cutoff(m->valuation());
    }
  } catch (const Error&) {
  }
  return r.value.with_approximate(true);
}

Series evaluate(const Expr& e, const EvalContext& context) {
  return Evaluator<Series>(context).eval(e);
}

ELSeries evaluate_el(const Expr& e, const EvalContext& context) {
  if (!context.tower) throw ConfigError("the field has no exponential-logarithmic tower");
  return Evaluator<ELSeries>(context).eval(e);
}

}  // namespace hahn
