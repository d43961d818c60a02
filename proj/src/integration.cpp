#include "hahn/integration.hpp"

#include "hahn/errors.hpp"

namespace hahn {

namespace {

[[noreturn]] void no_integral(const Exponent& theta_tilde, const DerivationSpec& spec) {
  throw NoAsymptoticIntegral("v(a) equals θ̃ = " + to_string(theta_tilde, *spec.spine()) +
                             ": no asymptotic integral");
}

std::optional<SpineIndex> family_psi(const Exponent& alpha, const ShiftFamily& f) {
  const Rational a0 = f.window.empty() ? Rational(0) : f.window[0];
  // v_Γ(α - θ_j) = j needs α_i = prefix for i < j and α_j != a_0.
  std::optional<std::int64_t> first_off;
  if (f.prefix == 0) {
    if (auto v = alpha.v_gamma()) first_off = v->value;
  } else {
    std::int64_t i = 0;
    while (alpha.coefficient(SpineIndex{i}) == f.prefix) ++i;
    first_off = i;
  }
  if (f.prefix != a0) return SpineIndex{0};
  if (!first_off) return std::nullopt;
  return SpineIndex{*first_off};
}

}  // namespace

SpineIndex find_psi(const Exponent& alpha, const DerivationSpec& spec) {
  const auto& theta_tilde = spec.theta_tilde();
  if (theta_tilde && alpha == *theta_tilde) no_integral(*theta_tilde, spec);
  if (spec.is_family()) {
    if (auto psi = family_psi(alpha, spec.shift_family())) return *psi;
  } else {
    for (auto phi : spec.labels()) {
      if ((alpha - spec.theta(phi)).v_gamma() == phi) return phi;
    }
  }
  throw InvariantViolation("no ψ with v_Γ(α - θ_ψ) = ψ for α = " +
                           to_string(alpha, *spec.spine()));
}

Series monomial_ai(const Series& a, const DerivationSpec& spec) {
  const auto& lead = a.leading();
  SpineIndex psi = find_psi(lead.exponent, spec);
  Exponent beta = lead.exponent - spec.theta(psi);
  Rational gamma0 = beta.coefficient(psi);
  Rational c = spec.leading_coefficient(psi);
  auto spine = Series::common_spine(a, Series::constant(0, spec.spine()));
  return Series::monomial(beta, lead.coefficient / (gamma0 * c), spine)
      .with_approximate(a.approximate());
}

bool is_asymptotic_integral(const Series& b, const Series& a, const DerivationSpec& spec) {
  Series diff = derive(b, spec) - a;
  if (diff.is_zero()) return true;
  auto lo = diff.lower_bound();
  return a.valuation() < *lo;
}

RosenlichtResult rosenlicht_ai(const Series& a, const Series& u, const DerivationSpec& spec,
                               std::size_t max_terms) {
  if (a.no_known_terms()) throw DomainError("asymptotic integral of zero");
  if (u.no_known_terms() || u.valuation().is_zero()) {
    throw DomainError("Rosenlicht test element needs nonzero valuation");
  }
  Series du = derive(u, spec);
  if (du.no_known_terms()) throw DomainError("d(u) vanishes");
  Series w = divide(a * u, du, max_terms);
  Series dw = derive(w, spec);
  if (dw.no_known_terms()) throw DomainError("w = a·u/d(u) is constant, so d(w) vanishes");
  Series b = divide(a * w, dw, max_terms);
  return {b, is_asymptotic_integral(b, a, spec)};
}

RosenlichtResult rosenlicht_search(const Series& a, const DerivationSpec& spec,
                                   std::size_t max_terms) {
  std::vector<Series> candidates;
  const auto& lead = a.leading();
  if (!lead.exponent.is_zero()) candidates.push_back(Series::monomial(lead.exponent, 1, spec.spine()));
  if (spec.is_family()) {
    std::int64_t top = 0;
    if (auto m = lead.exponent.max_index()) top = m->value;
    for (std::int64_t i = 0; i <= top + 2; ++i) {
      candidates.push_back(Series::monomial(Exponent::unit(SpineIndex{i}), 1, spec.spine()));
    }
  } else {
    for (auto phi : spec.labels()) {
      candidates.push_back(Series::monomial(Exponent::unit(phi), 1, spec.spine()));
    }
  }
  std::optional<RosenlichtResult> fallback;
  for (const auto& u : candidates) {
    try {
      auto r = rosenlicht_ai(a, u, spec, max_terms);
      if (r.verified) return r;
      if (!fallback) fallback = r;
    } catch (const DomainError&) {
    }
  }
  if (fallback) return *fallback;
  throw DomainError("no Rosenlicht candidate gives an asymptotic integral");
}

IntegrationResult integrate(const Series& a, const DerivationSpec& spec, std::size_t max_terms,
                            std::size_t max_iters) {
  IntegrationResult result;
  auto spine = Series::common_spine(a, Series::constant(0, spec.spine()));
  result.value = Series::constant(0, spine);
  result.residual = a;
  if (a.cutoff()) {
    // The unknown tail integrates to terms at or above the integral of its
    // lowest possible monomial.
    Series tail = Series::monomial(*a.cutoff(), 1, spine);
    result.value = Series::big_o(monomial_ai(tail, spec).valuation(), spine);
  }
  while (!result.residual.no_known_terms()) {
    if (result.iterations >= max_iters) {
      result.status = IntegrationStatus::budget_exhausted;
      break;
    }
    const Series& r = result.residual;
    Series step;
    try {
      step = monomial_ai(r, spec);
    } catch (const NoAsymptoticIntegral&) {
      result.status = IntegrationStatus::non_integrable;
      break;
    } catch (const InvariantViolation&) {
      auto rosenlicht = rosenlicht_search(Series::monomial(r.valuation(), r.leading().coefficient, spine),
                                          spec, max_terms);
      Series m = Series::monomial(rosenlicht.value.valuation(),
                                  rosenlicht.value.leading().coefficient, spine);
      if (!rosenlicht.verified || !is_asymptotic_integral(m, r, spec)) {
        result.status = IntegrationStatus::non_integrable;
        break;
      }
      step = m;
    }
    result.residual_valuations.push_back(r.valuation());
    result.value += step;
    Series next = a - derive(result.value, spec);
    ++result.iterations;
    if (!next.no_known_terms() && !(r.valuation() < next.valuation())) {
      throw InvariantViolation("residual valuation did not increase");
    }
    result.residual = std::move(next);
  }
  result.exact = result.residual.is_zero() && result.value.exact();
  return result;
}

const char* to_string(IntegrationStatus status) {
  switch (status) {
    case IntegrationStatus::complete:
      return "complete";
    case IntegrationStatus::budget_exhausted:
      return "budget exhausted";
    case IntegrationStatus::non_integrable:
      return "non-integrable";
  }
  return "";
}

}  // namespace hahn
