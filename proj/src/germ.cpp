#include "hahn/germ.hpp"

#include <cmath>

#include "hahn/errors.hpp"

namespace hahn {

GermKind GermKind::exp_iterate(int k) {
  if (k < 1) throw ConfigError("exp-iterate germs need k >= 1");
  return {Kind::exp_iterate, k};
}

GermKind GermKind::log_iterate(int k) {
  if (k < 1) throw ConfigError("log-iterate germs need k >= 1");
  return {Kind::log_iterate, k};
}

int GermKind::growth() const {
  switch (kind) {
    case Kind::exp_iterate:
      return k;
    case Kind::power:
      return 0;
    case Kind::log_iterate:
      return -k;
  }
  return 0;
}

double GermKind::log_value(double x) const {
  switch (kind) {
    case Kind::exp_iterate: {
      double e = x;
      for (int i = 1; i < k; ++i) e = std::exp(e);
      if (!std::isfinite(e)) throw DomainError("exp-iterate germ overflows at x = " + std::to_string(x));
      return -e;
    }
    case Kind::power:
      if (!(x > 0)) throw DomainError("1/x needs x > 0");
      return -std::log(x);
    case Kind::log_iterate: {
      double l = x;
      for (int i = 0; i < k; ++i) {
        if (!(l > 0)) break;
        l = std::log(l);
      }
      if (!(l > 0)) {
        throw DomainError("log_" + std::to_string(k) + "(x) is not positive at x = " + std::to_string(x));
      }
      return -std::log(l);
    }
  }
  return 0;
}

std::string GermKind::name() const {
  switch (kind) {
    case Kind::exp_iterate:
      return k == 1 ? "exp(-x)" : "1/exp_" + std::to_string(k) + "(x)";
    case Kind::power:
      return "1/x";
    case Kind::log_iterate:
      return k == 1 ? "1/log(x)" : "1/log_" + std::to_string(k) + "(x)";
  }
  return "";
}

GermMap GermMap::table(std::map<SpineIndex, GermKind> kinds) {
  const GermKind* previous = nullptr;
  for (const auto& [index, kind] : kinds) {
    if (previous && previous->growth() <= kind.growth()) {
      throw ConfigError("germ for t" + std::to_string(index.value) +
                        " must be smaller than the germs of lower labels");
    }
    previous = &kind;
  }
  GermMap g;
  g.kinds_ = std::move(kinds);
  return g;
}

GermMap GermMap::log_iterates() {
  GermMap g;
  g.log_iterates_ = true;
  return g;
}

bool GermMap::covers(SpineIndex i) const {
  if (log_iterates_) return i.value >= 0;
  return kinds_.contains(i);
}

GermKind GermMap::kind(SpineIndex i) const {
  if (log_iterates_) {
    if (i.value < 0) throw DomainError("no germ for a negative label");
    return i.value == 0 ? GermKind::power() : GermKind::log_iterate(static_cast<int>(i.value));
  }
  auto it = kinds_.find(i);
  if (it == kinds_.end()) throw DomainError("no germ assigned to t" + std::to_string(i.value));
  return it->second;
}

double log_monomial(const Exponent& alpha, const GermMap& germs, double x) {
  double sum = 0;
  for (const auto& [index, q] : alpha.entries()) sum += q.get_d() * germs.kind(index).log_value(x);
  return sum;
}

double eval_series(const Series& a, const GermMap& germs, double x) {
  double sum = 0;
  for (const auto& t : a.terms()) {
    sum += t.coefficient.get_d() * std::exp(log_monomial(t.exponent, germs, x));
  }
  return sum;
}

namespace {

double log_monomial_el(const ELExponent& e, const GermMap& germs, double x) {
  if (e.level() == 0) return log_monomial(e.base(), germs, x);
  return eval_series(e.payload(), germs, x);
}

double relative_error(double symbolic, double numeric) {
  double scale = std::max(std::abs(symbolic), std::abs(numeric));
  if (scale == 0) return 0;
  return std::abs(symbolic - numeric) / scale;
}

template <class S, class Eval>
DerivativeReport report(const S& derivative, const S& a, Eval eval, double x, double h) {
  if (!(h > 0)) throw DomainError("step must be positive");
  // The constant term does not change the derivative and only adds cancellation.
  S varying = a - S::constant(a.constant_term());
  DerivativeReport r;
  r.symbolic = eval(derivative, x);
  r.numeric = (eval(varying, x + h) - eval(varying, x - h)) / (2 * h);
  r.rel_err = relative_error(r.symbolic, r.numeric);
  return r;
}

}  // namespace

double eval_series(const ELSeries& a, const GermMap& germs, double x) {
  double sum = 0;
  for (const auto& t : a.terms()) {
    sum += t.coefficient.get_d() * std::exp(log_monomial_el(t.exponent, germs, x));
  }
  return sum;
}

double default_step(double x) { return 1e-6 * std::max(1.0, std::abs(x)); }

DerivativeReport numeric_derivative_check(const Series& a, const DerivationSpec& spec,
                                          const GermMap& germs, double x, double h) {
  auto eval = [&](const Series& s, double at) { return eval_series(s, germs, at); };
  return report(derive(a, spec), a, eval, x, h);
}

DerivativeReport numeric_derivative_check(const ELSeries& a, const Tower& tower,
                                          const GermMap& germs, double x, double h) {
  auto eval = [&](const ELSeries& s, double at) { return eval_series(s, germs, at); };
  return report(derive_el(a, tower), a, eval, x, h);
}

}  // namespace hahn
