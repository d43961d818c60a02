#include "hahn/el_tower.hpp"

#include <algorithm>

#include "hahn/errors.hpp"

namespace hahn {

namespace {

const Tower& tower_of(const ELExponent& a, const ELExponent& b) {
  if (a.tower()) return *a.tower();
  if (b.tower()) return *b.tower();
  throw InvariantViolation("EL exponent without a tower");
}

ELExponent raise_once(const ELExponent& e) {
  const auto& tower = e.tower();
  if (!tower) throw InvariantViolation("EL exponent without a tower");
  if (e.level() == 0) {
    return ELExponent::raw(1, tower->embed(prelog_monomial(e.base(), tower->prelog())), tower);
  }
  return ELExponent::raw(e.level() + 1, lift(e.payload(), e.level()), tower);
}

ELExponent raise(ELExponent e, std::size_t to_level) {
  if (e.is_zero()) return e;
  while (e.level() < to_level) e = raise_once(e);
  return e;
}

ELSeries monomial(const ELExponent& e, const Rational& q, const std::shared_ptr<const Spine>& spine) {
  return ELSeries::monomial(e, q, spine);
}

// d(O(t^c)) lies in O(t^bound): l'Hospital in the Hardy-type extension.
ELExponent derivative_cutoff_el(const ELExponent& c, const Tower& tower) {
  if (c.is_zero()) return tower.exponent(tower.derivation().derivative_cutoff(Exponent{}));
  if (c.level() == 0) return tower.exponent(tower.derivation().derivative_cutoff(c.base()));
  return c + monomial_log_derivative_el(c, tower).valuation();
}

// The Rosenlicht expression a·w/d(w), w = a·u/d(u).
ELSeries rosenlicht_el(const ELSeries& a, const ELSeries& u, const Tower& tower,
                       std::size_t max_terms) {
  ELSeries du = derive_el(u, tower);
  if (du.no_known_terms()) throw DomainError("d(u) vanishes");
  ELSeries w = divide(a * u, du, max_terms);
  ELSeries dw = derive_el(w, tower);
  if (dw.no_known_terms()) throw DomainError("w = a·u/d(u) is constant, so d(w) vanishes");
  return divide(a * w, dw, max_terms);
}

bool contract(const ELSeries& m, const ELSeries& r, const Tower& tower) {
  ELSeries diff = derive_el(m, tower) - r;
  if (diff.is_zero()) return true;
  return r.valuation() < *diff.lower_bound();
}

}  // namespace

std::optional<ELSeries> asymptotic_integral_el(const ELSeries& r, const Tower& tower,
                                               std::size_t max_terms) {
  const auto& lead = r.leading();
  const auto& spine = r.spine();
  if (lead.exponent.level() == 0) {
    Series base = monomial_ai(Series::monomial(lead.exponent.base(), lead.coefficient,
                                               tower.spine()),
                              tower.derivation());
    ELSeries m = tower.embed(base);
    if (contract(m, r, tower)) return m;
  }
  ELSeries a = monomial(lead.exponent, lead.coefficient, spine);
  std::vector<ELSeries> candidates;
  if (!lead.exponent.is_zero()) candidates.push_back(monomial(lead.exponent, 1, spine));
  if (tower.spine()->is_finite()) {
    for (auto phi : tower.spine()->labels()) {
      candidates.push_back(monomial(tower.exponent(Exponent::unit(phi)), 1, spine));
    }
  } else {
    for (std::int64_t i = 0; i <= 3; ++i) {
      candidates.push_back(monomial(tower.exponent(Exponent::unit(SpineIndex{i})), 1, spine));
    }
  }
  for (const auto& u : candidates) {
    try {
      ELSeries b = rosenlicht_el(a, u, tower, max_terms);
      if (b.no_known_terms()) continue;
      ELSeries m = monomial(b.leading().exponent, b.leading().coefficient, spine);
      if (contract(m, r, tower)) return m;
    } catch (const DomainError&) {
    }
  }
  return std::nullopt;
}


ELExponent ELExponent::raw(std::size_t level, ELSeries payload, std::shared_ptr<const Tower> tower) {
  if (level == 0) throw InvariantViolation("raw EL exponents start at level 1");
  ELExponent e;
  e.level_ = level;
  e.payload_ = std::make_shared<const ELSeries>(std::move(payload));
  e.tower_ = std::move(tower);
  return e;
}

const ELSeries& ELExponent::payload() const {
  if (!payload_) throw InvariantViolation("level-0 EL exponent has no payload");
  return *payload_;
}

ELSeries ELExponent::log() const {
  if (level_ > 0) return *payload_;
  if (base_.is_zero()) return ELSeries{};
  if (!tower_) throw InvariantViolation("EL exponent without a tower");
  return tower_->embed(prelog_monomial(base_, tower_->prelog()));
}

ELExponent ELExponent::operator-() const {
  if (level_ == 0) return ELExponent(-base_, tower_);
  return raw(level_, -*payload_, tower_);
}

ELExponent operator+(const ELExponent& a, const ELExponent& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.level_ == 0 && b.level_ == 0) return ELExponent(a.base_ + b.base_, a.tower_ ? a.tower_ : b.tower_);
  return tower_of(a, b).from_log(a.log() + b.log());
}

std::strong_ordering operator<=>(const ELExponent& a, const ELExponent& b) {
  if (a.level_ == 0 && b.level_ == 0) return a.base_ <=> b.base_;
  if (a.level_ == b.level_ && a.payload_ == b.payload_) return std::strong_ordering::equal;
  // Larger logarithm means larger monomial, i.e. smaller exponent.
  return compare_series(b.log(), a.log());
}

ELExponent scale_exponent(const ELExponent& e, const Rational& q) {
  if (q == 0) return ELExponent({}, e.tower());
  if (e.level() == 0) return ELExponent(e.base() * q, e.tower());
  return ELExponent::raw(e.level(), e.payload() * q, e.tower());
}

std::shared_ptr<const Tower> Tower::create(DerivationSpec derivation, PreLogSpec prelog,
                                           CoefficientHooks hooks, std::size_t depth) {
  auto report = validate_prelog(derivation, prelog);
  if (!report.ok()) {
    throw ConfigError("the pre-logarithm fails validation; the field admits no EL tower");
  }
  return std::shared_ptr<const Tower>(
      new Tower(std::move(derivation), std::move(prelog), hooks, depth));
}

ELExponent Tower::exponent(const Exponent& alpha) const {
  return ELExponent(alpha, shared_from_this());
}

ELSeries Tower::embed(const Series& s) const {
  std::vector<Term<ELExponent>> terms;
  terms.reserve(s.size());
  for (const auto& t : s.terms()) terms.push_back({exponent(t.exponent), t.coefficient});
  ELSeries r = ELSeries::from_terms(std::move(terms), s.spine() ? s.spine() : spine());
  if (s.cutoff()) r = r.with_cutoff(exponent(*s.cutoff()));
  return r.with_approximate(s.approximate());
}

ELExponent Tower::from_log(const ELSeries& s) const {
  if (s.is_zero()) return ELExponent({}, shared_from_this());
  if (!s.exact()) throw DomainError("exponent of a monomial must be known exactly");
  for (const auto& t : s.terms()) {
    if (!(t.exponent < ELExponent{})) {
      throw InvariantViolation("logarithm of a monomial must be purely infinite");
    }
  }
  std::size_t m = level(s);
  if (m == 0) {
    if (auto alpha = prelog_.recover(*to_series(s))) return exponent(*alpha);
  }
  if (m + 1 > depth_) {
    throw BudgetError("tower depth " + std::to_string(depth_) + " exceeded");
  }
  return ELExponent::raw(m + 1, s, shared_from_this());
}

std::size_t level(const ELSeries& a) {
  std::size_t m = 0;
  for (const auto& t : a.terms()) m = std::max(m, t.exponent.level());
  if (a.cutoff()) m = std::max(m, a.cutoff()->level());
  return m;
}

std::optional<Series> to_series(const ELSeries& a) {
  if (level(a) != 0) return std::nullopt;
  std::vector<Term<Exponent>> terms;
  for (const auto& t : a.terms()) terms.push_back({t.exponent.base(), t.coefficient});
  Series s = Series::from_terms(std::move(terms), a.spine());
  if (a.cutoff()) s = s.with_cutoff(a.cutoff()->base());
  return s.with_approximate(a.approximate());
}

ELSeries lift(const ELSeries& a, std::size_t to_level) {
  std::vector<Term<ELExponent>> terms;
  for (const auto& t : a.terms()) terms.push_back({raise(t.exponent, to_level), t.coefficient});
  ELSeries r = ELSeries::from_terms(std::move(terms), a.spine());
  if (a.cutoff()) r = r.with_cutoff(raise(*a.cutoff(), to_level));
  return r.with_approximate(a.approximate());
}

ELSeries exp_el(const ELSeries& a, const Tower& tower, std::size_t max_terms) {
  if (a.cutoff() && !(ELExponent{} < *a.cutoff())) {
    throw DomainError("exponential undefined: the error term is not infinitesimal");
  }
  auto c = tower.hooks().exp_k(a.constant_term());
  if (!c) {
    throw DomainError("exp_k(" + to_string(a.constant_term()) +
                      ") is undefined under rational coefficient hooks");
  }
  ELSeries up = a.infinite_part();
  ELExponent e = up.is_zero() ? tower.exponent({}) : tower.from_log(up);
  ELSeries small = exp_infinitesimal(a.infinitesimal_part(), max_terms);
  return (monomial(e, c->value, a.spine()) * small).with_approximate(c->approximate);
}

ELSeries log_el(const ELSeries& a, const Tower& tower, std::size_t max_terms) {
  if (a.no_known_terms() || a.leading().coefficient < 0) {
    throw DomainError("logarithm needs a positive series");
  }
  const auto& lead = a.leading();
  auto lk = tower.hooks().log_k(lead.coefficient);
  if (!lk) {
    throw DomainError("log_k(" + to_string(lead.coefficient) +
                      ") is undefined under rational coefficient hooks");
  }
  ELSeries unit = a * monomial(-lead.exponent, 1 / lead.coefficient, a.spine());
  ELSeries eps = unit - ELSeries::constant(1, a.spine());
  ELSeries result = lead.exponent.log() + ELSeries::constant(lk->value, a.spine()) +
                    log1p_unit(eps, max_terms);
  return result.with_approximate(lk->approximate || a.approximate());
}

ELSeries monomial_log_derivative_el(const ELExponent& e, const Tower& tower) {
  if (e.level() == 0) return tower.embed(monomial_log_derivative(e.base(), tower.derivation()));
  return derive_el(e.payload(), tower);
}

ELSeries derive_el(const ELSeries& a, const Tower& tower) {
  std::vector<Term<ELExponent>> terms;
  for (const auto& t : a.terms()) {
    if (t.exponent.is_zero()) continue;
    ELSeries dl = monomial_log_derivative_el(t.exponent, tower);
    for (const auto& s : dl.terms()) {
      terms.push_back({t.exponent + s.exponent, t.coefficient * s.coefficient});
    }
  }
  ELSeries r = ELSeries::from_terms(std::move(terms), a.spine());
  if (a.cutoff()) r = r.with_cutoff(derivative_cutoff_el(*a.cutoff(), tower));
  return r.with_approximate(a.approximate());
}

ELIntegrationResult integrate_el(const ELSeries& a, const Tower& tower, std::size_t max_terms,
                                 std::size_t max_iters) {
  ELIntegrationResult result;
  result.value = ELSeries::constant(0, a.spine());
  result.residual = a;
  while (!result.residual.no_known_terms()) {
    if (result.iterations >= max_iters) {
      result.status = IntegrationStatus::budget_exhausted;
      break;
    }
    const ELSeries& r = result.residual;
    std::optional<ELSeries> step;
    try {
      step = asymptotic_integral_el(r, tower, max_terms);
    } catch (const NoAsymptoticIntegral&) {
    }
    if (!step) {
      result.status = IntegrationStatus::non_integrable;
      break;
    }
    result.residual_valuations.push_back(r.valuation());
    result.value += *step;
    ELSeries next = a - derive_el(result.value, tower);
    ++result.iterations;
    if (!next.no_known_terms() && !(r.valuation() < next.valuation())) {
      throw InvariantViolation("residual valuation did not increase");
    }
    result.residual = std::move(next);
  }
  result.exact = result.residual.is_zero() && result.value.exact();
  return result;
}

}  // namespace hahn
