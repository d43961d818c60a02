#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hahn/derivation.hpp"
#include "hahn/series.hpp"

namespace hahn {

/// Partial logarithm and exponential on the coefficient field plus its
/// numeric embedding. Rational hooks know only log 1 = 0 and exp 0 = 1;
/// floating hooks go through double precision and mark results approximate.
class CoefficientHooks {
 public:
  enum class Kind { rational, floating };

  struct Value {
    Rational value;
    bool approximate = false;
  };

  static CoefficientHooks rational() { return CoefficientHooks(Kind::rational); }
  static CoefficientHooks floating() { return CoefficientHooks(Kind::floating); }

  Kind kind() const noexcept { return kind_; }
  std::optional<Value> log_k(const Rational& q) const;
  std::optional<Value> exp_k(const Rational& q) const;
  double numeric(const Rational& q) const { return q.get_d(); }

 private:
  explicit CoefficientHooks(Kind kind) : kind_(kind) {}
  Kind kind_;
};

/// log(t_φ) for the fundamental monomials, extended to t^α by the series
/// morphism law log(t^α) = Σ_φ α_φ log(t_φ). Values may be missing for some
/// labels (a partial pre-logarithm).
class PreLogSpec {
 public:
  static PreLogSpec table(std::shared_ptr<const Spine> spine, std::map<SpineIndex, Series> logmono);
  /// log(t_n) = sign·t_{n+1}^{-1} on the naturals.
  static PreLogSpec sigma_shift(Rational sign = 1);
  /// log(t_φ) = the integral of d(t_φ)/t_φ; labels whose integral does not
  /// exist exactly within the budget are left undefined.
  static PreLogSpec from_derivation(const DerivationSpec& spec, std::size_t max_terms = 32);

  const std::shared_ptr<const Spine>& spine() const noexcept { return spine_; }
  bool defined(SpineIndex i) const;
  /// Throws DomainError when undefined.
  Series logmono(SpineIndex i) const;
  /// Labels with a value, for finite spines.
  std::vector<SpineIndex> defined_labels() const;

  /// Inverse hook: the exponent α with Σ α_φ log(t_φ) = s, if any.
  std::optional<Exponent> recover(const Series& s) const;

 private:
  enum class Kind { table, sigma_shift, from_derivation };
  PreLogSpec() = default;

  Kind kind_ = Kind::table;
  std::shared_ptr<const Spine> spine_;
  std::map<SpineIndex, Series> table_;
  Rational sign_ = 1;
  std::shared_ptr<const DerivationSpec> derivation_;

  struct Memo {
    std::mutex mutex;
    std::map<SpineIndex, Series> values;
  };
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

/// Σ_{n=1}^{max_terms} (-1)^{n-1} ε^n / n for v(ε) > 0.
template <class Exp>
BasicSeries<Exp> log1p_unit(const BasicSeries<Exp>& eps, std::size_t max_terms) {
  if (eps.is_zero()) return eps;
  auto lo = eps.lower_bound();
  if (!(Exp{} < *lo)) throw DomainError("log1p needs an infinitesimal argument");
  std::vector<Rational> coefficients(max_terms + 1);
  coefficients[0] = 0;
  for (std::size_t n = 1; n <= max_terms; ++n) {
    coefficients[n] = Rational(n % 2 == 1 ? 1 : -1, static_cast<unsigned long>(n));
  }
  return power_series(eps, coefficients, max_terms);
}

/// Σ_{m<max_terms} ε^m / m! for v(ε) > 0.
template <class Exp>
BasicSeries<Exp> exp_infinitesimal(const BasicSeries<Exp>& eps, std::size_t max_terms) {
  using S = BasicSeries<Exp>;
  if (eps.is_zero()) return S::constant(1, eps.spine());
  auto lo = eps.lower_bound();
  if (!(Exp{} < *lo)) throw DomainError("exponential series needs an infinitesimal argument");
  std::vector<Rational> coefficients(max_terms);
  Rational factorial = 1;
  for (std::size_t m = 0; m < max_terms; ++m) {
    if (m > 0) factorial *= static_cast<unsigned long>(m);
    coefficients[m] = 1 / factorial;
  }
  return power_series(eps, coefficients, max_terms);
}

/// log(t^α) = Σ_φ α_φ log(t_φ).
Series prelog_monomial(const Exponent& alpha, const PreLogSpec& spec);

/// log(a) = log(t^α) + log_k(a_α) + log1p(ε) for a = a_α t^α (1 + ε) > 0.
Series log_series(const Series& a, const PreLogSpec& spec, const CoefficientHooks& hooks,
                  std::size_t max_terms);

/// exp(a) for a without infinite part: exp_k(a_0)·exp(a↓).
Series exp_series(const Series& a, const CoefficientHooks& hooks, std::size_t max_terms);

struct PrelogReport {
  /// θ̃ lies in no support of d(t_φ)/t_φ.
  bool condition1 = false;
  std::optional<Exponent> theta_tilde;
  std::vector<SpineIndex> condition1_witnesses;
  /// Every support exponent τ of d(t_φ)/t_φ has an asymptotic integral of
  /// negative valuation.
  bool condition2 = false;
  std::vector<SpineIndex> condition2_witnesses;
  /// d(log t_φ) = d(t_φ)/t_φ exactly.
  bool compatible = false;
  std::vector<SpineIndex> incompatible;
  /// v(log t_φ) < 0 and v(log t_φ^{-1}) > -1_φ.
  bool growth = false;
  std::vector<SpineIndex> growth_witnesses;
  /// Labels without a value.
  std::vector<SpineIndex> missing;

  bool ok() const { return condition1 && condition2 && compatible && growth && missing.empty(); }
};

/// On the naturals the checks run on labels 0..4; for shift families and
/// the built-in generators the conditions have the same shape for every n.
PrelogReport validate_prelog(const DerivationSpec& dspec, const PreLogSpec& pspec);

}  // namespace hahn
