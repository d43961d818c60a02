#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "hahn/derivation.hpp"
#include "hahn/integration.hpp"
#include "hahn/logarithm.hpp"
#include "hahn/series.hpp"

namespace hahn {

class Tower;
class ELExponent;
using ELSeries = BasicSeries<ELExponent>;

/// Exponent of the exponential-logarithmic closure. Level 0 is an ordinary
/// group element α (the monomial t^α); level n >= 1 carries a purely
/// infinite series s of level n - 1 and stands for the monomial exp(s).
///
/// Every exponent e has a logarithm L(e): log(t^α) from the pre-logarithm at
/// level 0, the payload otherwise. Monomials are ordered by their logarithms,
/// so e1 < e2 iff L(e1) > L(e2). Values produced by the tower are canonical
/// (a payload is never the logarithm of a lower-level monomial), but raw
/// lifted forms compare correctly as well.
class ELExponent {
 public:
  ELExponent() = default;
  ELExponent(Exponent base, std::shared_ptr<const Tower> tower)
      : base_(std::move(base)), tower_(std::move(tower)) {}
  /// A level >= 1 exponent with the given payload, stored as is.
  static ELExponent raw(std::size_t level, ELSeries payload, std::shared_ptr<const Tower> tower);

  std::size_t level() const noexcept { return level_; }
  const Exponent& base() const noexcept { return base_; }
  const ELSeries& payload() const;
  const std::shared_ptr<const Tower>& tower() const noexcept { return tower_; }
  bool is_zero() const noexcept { return level_ == 0 && base_.is_zero(); }

  /// L(e) as a series.
  ELSeries log() const;

  ELExponent operator-() const;
  friend ELExponent operator+(const ELExponent& a, const ELExponent& b);
  friend ELExponent operator-(const ELExponent& a, const ELExponent& b) { return a + (-b); }

  friend std::strong_ordering operator<=>(const ELExponent& a, const ELExponent& b);
  friend bool operator==(const ELExponent& a, const ELExponent& b) { return (a <=> b) == 0; }

 private:
  std::size_t level_ = 0;
  Exponent base_;
  std::shared_ptr<const ELSeries> payload_;
  std::shared_ptr<const Tower> tower_;
};

ELExponent scale_exponent(const ELExponent& e, const Rational& q);

struct ELIntegrationResult {
  ELSeries value;
  ELSeries residual;
  bool exact = false;
  std::size_t iterations = 0;
  IntegrationStatus status = IntegrationStatus::complete;
  std::vector<ELExponent> residual_valuations;
};

/// The exponential-logarithmic closure of a field with a compatible
/// pre-logarithm, truncated at a depth budget. Levels are created on demand.
class Tower : public std::enable_shared_from_this<Tower> {
 public:
  /// Throws ConfigError unless the pre-logarithm passes validate_prelog.
  static std::shared_ptr<const Tower> create(DerivationSpec derivation, PreLogSpec prelog,
                                             CoefficientHooks hooks, std::size_t depth = 3);

  const DerivationSpec& derivation() const noexcept { return derivation_; }
  const PreLogSpec& prelog() const noexcept { return prelog_; }
  const CoefficientHooks& hooks() const noexcept { return hooks_; }
  std::size_t depth() const noexcept { return depth_; }
  const std::shared_ptr<const Spine>& spine() const noexcept { return derivation_.spine(); }

  ELExponent exponent(const Exponent& alpha) const;
  ELSeries embed(const Series& s) const;

  /// The canonical exponent e with L(e) = s, for purely infinite exact s:
  /// demoted to level 0 through the inverse pre-log hook when possible.
  /// Throws BudgetError beyond the depth budget.
  ELExponent from_log(const ELSeries& s) const;

 private:
  Tower(DerivationSpec derivation, PreLogSpec prelog, CoefficientHooks hooks, std::size_t depth)
      : derivation_(std::move(derivation)),
        prelog_(std::move(prelog)),
        hooks_(hooks),
        depth_(depth) {}

  DerivationSpec derivation_;
  PreLogSpec prelog_;
  CoefficientHooks hooks_;
  std::size_t depth_;
};

/// Highest exponent level in the series (error term included).
std::size_t level(const ELSeries& a);

/// The level-0 series, when every exponent is at level 0.
std::optional<Series> to_series(const ELSeries& a);

/// Rewrites every nonzero exponent at level n < to_level to level to_level
/// through α -> t^{log t^α}. Order-preserving and injective.
ELSeries lift(const ELSeries& a, std::size_t to_level);

/// exp(a) = t^{a↑}·exp_k(a_0)·exp(a↓).
ELSeries exp_el(const ELSeries& a, const Tower& tower, std::size_t max_terms);

/// log(a) = L(e) + log_k(c) + log1p(ε) for a = c·t^e·(1 + ε) > 0.
ELSeries log_el(const ELSeries& a, const Tower& tower, std::size_t max_terms);

/// d(t^e) = t^e·d(L(e)), with the strong Leibniz rule at level 0.
ELSeries derive_el(const ELSeries& a, const Tower& tower);

/// Logarithmic derivative d(L(e)) of the monomial t^e.
ELSeries monomial_log_derivative_el(const ELExponent& e, const Tower& tower);

/// A verified monomial asymptotic integral of the leading term of a, if one is found.
std::optional<ELSeries> asymptotic_integral_el(const ELSeries& a, const Tower& tower,
                                               std::size_t max_terms);

ELIntegrationResult integrate_el(const ELSeries& a, const Tower& tower, std::size_t max_terms,
                                 std::size_t max_iters = 64);

}  // namespace hahn
