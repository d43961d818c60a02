#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hahn/derivation.hpp"
#include "hahn/series.hpp"

namespace hahn {

/// The unique ψ with v_Γ(α - θ_ψ) = ψ. Throws NoAsymptoticIntegral when α is
/// θ̃, InvariantViolation when no ψ exists.
SpineIndex find_psi(const Exponent& alpha, const DerivationSpec& spec);

/// (a_α / (γ_0 c_ψ)) t^{α - θ_ψ} for the leading term a_α t^α of a, where
/// γ_0 is the coefficient of α - θ_ψ at ψ and c_ψ the leading coefficient of
/// d(t_ψ)/t_ψ.
Series monomial_ai(const Series& a, const DerivationSpec& spec);

/// v(d(b) - a) > v(a); false when the error terms leave it undecided.
bool is_asymptotic_integral(const Series& b, const Series& a, const DerivationSpec& spec);

struct RosenlichtResult {
  Series value;
  bool verified = false;
};

/// b = a·w/d(w) with w = a·u/d(u). Throws DomainError when v(u) = 0, or when
/// d(u) or d(w) vanishes (w constant), since the formula is then undefined.
RosenlichtResult rosenlicht_ai(const Series& a, const Series& u, const DerivationSpec& spec,
                               std::size_t max_terms);

/// Tries u = leading monomial of a, then t_φ over the spine in descending
/// |v(t_φ)| (t_0 .. t_{m+2} on the naturals, m the largest label of v(a)),
/// returning the first verified candidate.
RosenlichtResult rosenlicht_search(const Series& a, const DerivationSpec& spec,
                                   std::size_t max_terms);

enum class IntegrationStatus { complete, budget_exhausted, non_integrable };

struct IntegrationResult {
  Series value;
  /// a - d(value).
  Series residual;
  bool exact = false;
  std::size_t iterations = 0;
  IntegrationStatus status = IntegrationStatus::complete;
  /// v(r_k) for every residual that was integrated, strictly increasing.
  std::vector<Exponent> residual_valuations;
};

/// b <- b + a.i.(r), r <- a - d(b) until r vanishes, max_iters is reached,
/// or r has valuation θ̃.
IntegrationResult integrate(const Series& a, const DerivationSpec& spec, std::size_t max_terms,
                            std::size_t max_iters = 64);

const char* to_string(IntegrationStatus status);

}  // namespace hahn
