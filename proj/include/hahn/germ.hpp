#pragma once

#include <map>
#include <optional>
#include <string>

#include "hahn/el_tower.hpp"
#include "hahn/series.hpp"

namespace hahn {

/// The germ at +∞ assigned to a fundamental monomial t_φ: 1/exp_k(x),
/// 1/x, or 1/log_k(x), with k >= 1 for the iterates.
struct GermKind {
  enum class Kind { exp_iterate, power, log_iterate };
  Kind kind = Kind::power;
  int k = 0;

  static GermKind exp_iterate(int k);
  static GermKind power() { return {}; }
  static GermKind log_iterate(int k);

  /// Growth of the reciprocal: positive for exp-iterates, 0 for x,
  /// negative for log-iterates.
  int growth() const;
  /// log of the germ value at x. Throws DomainError outside the domain.
  double log_value(double x) const;
  std::string name() const;

  friend bool operator==(const GermKind&, const GermKind&) = default;
};

class GermMap {
 public:
  /// Labels must carry strictly slower reciprocals as the index grows.
  static GermMap table(std::map<SpineIndex, GermKind> kinds);
  /// t_n = 1/log_n(x) on the naturals, log_0(x) = x.
  static GermMap log_iterates();

  GermKind kind(SpineIndex i) const;
  bool covers(SpineIndex i) const;
  const std::map<SpineIndex, GermKind>& entries() const noexcept { return kinds_; }
  bool is_log_iterates() const noexcept { return log_iterates_; }

 private:
  std::map<SpineIndex, GermKind> kinds_;
  bool log_iterates_ = false;
};

/// log t^α at x.
double log_monomial(const Exponent& alpha, const GermMap& germs, double x);

/// Σ a_α t^α(x); the error term, if any, is ignored.
double eval_series(const Series& a, const GermMap& germs, double x);
/// EL monomials t^e evaluate to exp(L(e)(x)), innermost level first.
double eval_series(const ELSeries& a, const GermMap& germs, double x);

struct DerivativeReport {
  double symbolic = 0;
  double numeric = 0;
  double rel_err = 0;
};

/// Step heuristic for central differences at x.
double default_step(double x);

/// Compares eval(derive(a)) with a central difference of eval(a) at x.
DerivativeReport numeric_derivative_check(const Series& a, const DerivationSpec& spec,
                                          const GermMap& germs, double x, double h);
DerivativeReport numeric_derivative_check(const ELSeries& a, const Tower& tower,
                                          const GermMap& germs, double x, double h);

}  // namespace hahn
