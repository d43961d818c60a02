#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hahn/exponent.hpp"
#include "hahn/series.hpp"

namespace hahn {

/// A derivation on the naturals generated by the right shift:
///   θ_n = prefix·(1_0 + ... + 1_{n-1}) + Σ_k window[k]·1_{n+k},
///   d(t_n)/t_n = coefficient·t^{θ_n}.
/// The log-iterate field is prefix 1, window {1}, coefficient -1; the
/// construction with θ_n = -1_{n+1} is prefix 0, window {0, -1}.
struct ShiftFamily {
  Rational prefix = 0;
  std::vector<Rational> window;
  Rational coefficient = -1;

  Exponent theta(std::int64_t n) const;
};

/// Logarithmic derivatives d(t_φ)/t_φ of the fundamental monomials, either
/// as an explicit table over a finite spine or as a shift family over the
/// naturals.
class DerivationSpec {
 public:
  /// Every spine label needs a nonzero, exact entry over the same spine.
  static DerivationSpec table(std::shared_ptr<const Spine> spine,
                              std::map<SpineIndex, Series> logderiv);
  static DerivationSpec family(ShiftFamily family);

  const std::shared_ptr<const Spine>& spine() const noexcept { return spine_; }
  bool is_family() const noexcept { return family_.has_value(); }
  const ShiftFamily& shift_family() const;

  Series logderiv(SpineIndex i) const;
  /// θ_φ = v(d(t_φ)/t_φ).
  Exponent theta(SpineIndex i) const;
  Rational leading_coefficient(SpineIndex i) const;

  /// Spine labels of a finite table, ascending.
  std::vector<SpineIndex> labels() const;

  /// Lower bound for every θ_φ. Throws DomainError for a decreasing family
  /// (no minimum).
  Exponent theta_min() const;

  /// Cached outcome of the Hardy condition and of θ̃.
  bool hardy() const noexcept { return hardy_; }
  const std::optional<Exponent>& theta_tilde() const noexcept { return theta_tilde_; }

  /// An exponent below which d(O(t^c)) has no terms. For Hardy-type
  /// derivations l'Hospital's rule gives v(d(t^c)) (c != 0) and v(d(t^{-1}_φ))
  /// for some φ (c == 0, bounding derivatives of infinitesimals); otherwise
  /// c + min θ_φ.
  Exponent derivative_cutoff(const Exponent& c) const;

 private:
  DerivationSpec() = default;
  void cache_validation();

  bool hardy_ = false;
  std::optional<Exponent> theta_tilde_;

  std::shared_ptr<const Spine> spine_;
  std::map<SpineIndex, Series> table_;
  std::optional<ShiftFamily> family_;
};

struct HardyViolation {
  SpineIndex first;
  SpineIndex second;
  std::string reason;
};

struct HardyReport {
  bool h3_ok = false;
  bool hfield_ok = false;
  bool c1c2_ok = false;
  /// Least upper bound of the θ_φ when it exists in the group; nullopt means
  /// not attained.
  std::optional<Exponent> theta_tilde;
  std::vector<HardyViolation> violations;
};

HardyReport validate_hardy(const DerivationSpec& spec);

/// Strong linearity plus the strong Leibniz rule
///   d(t^α) = t^α Σ_φ α_φ d(t_φ)/t_φ.
Series derive(const Series& a, const DerivationSpec& spec);

/// d(a)/a; exact for monomials.
Series log_derivative(const Series& a, const DerivationSpec& spec, std::size_t max_terms);

/// Σ_φ α_φ d(t_φ)/t_φ, the logarithmic derivative of t^α.
Series monomial_log_derivative(const Exponent& alpha, const DerivationSpec& spec);

/// Whether a shift family on the naturals is summable: either θ_n is
/// supported on {n+1, n+2, ...} with negative coefficient at n+1, or the
/// family satisfies the Hardy condition symbolically.
bool check_right_shift_family(const Spine& spine, const ShiftFamily& family);

/// Symbolic Hardy condition for a shift family; fills the witness pair
/// (0, δ) on failure.
bool family_h3(const ShiftFamily& family, std::optional<HardyViolation>* witness = nullptr);

}  // namespace hahn
