#include "hahn/derivation.hpp"

#include <algorithm>

#include "hahn/errors.hpp"

namespace hahn {

namespace {

Rational window_at(const ShiftFamily& f, std::size_t k) {
  return k < f.window.size() ? f.window[k] : Rational(0);
}

std::string label(SpineIndex i) { return "φ" + to_string(i); }

}  // namespace

Exponent ShiftFamily::theta(std::int64_t n) const {
  std::vector<Exponent::Entry> entries;
  for (std::int64_t j = 0; j < n; ++j) entries.emplace_back(SpineIndex{j}, prefix);
  for (std::size_t k = 0; k < window.size(); ++k) {
    entries.emplace_back(SpineIndex{n + static_cast<std::int64_t>(k)}, window[k]);
  }
  return Exponent(std::move(entries));
}

DerivationSpec DerivationSpec::table(std::shared_ptr<const Spine> spine,
                                     std::map<SpineIndex, Series> logderiv) {
  if (!spine || !spine->is_finite()) {
    throw ConfigError("a logarithmic-derivative table needs a finite spine");
  }
  for (auto i : spine->labels()) {
    auto it = logderiv.find(i);
    if (it == logderiv.end()) {
      throw ConfigError("missing logarithmic derivative for spine label " + to_string(i));
    }
    if (it->second.no_known_terms()) {
      throw ConfigError("logarithmic derivative of spine label " + to_string(i) + " is zero");
    }
    if (!it->second.exact()) {
      throw ConfigError("logarithmic derivative of spine label " + to_string(i) +
                        " must be exact");
    }
    for (const auto& t : it->second.terms()) spine->require(t.exponent);
    it->second = it->second.with_spine(spine);
  }
  if (logderiv.size() != spine->labels().size()) {
    throw ConfigError("logarithmic derivative given for a label outside the spine");
  }
  DerivationSpec spec;
  spec.spine_ = std::move(spine);
  spec.table_ = std::move(logderiv);
  spec.cache_validation();
  return spec;
}

DerivationSpec DerivationSpec::family(ShiftFamily family) {
  if (family.coefficient == 0) throw ConfigError("shift family coefficient must be nonzero");
  DerivationSpec spec;
  spec.spine_ = std::make_shared<const Spine>(Spine::naturals());
  spec.family_ = std::move(family);
  spec.cache_validation();
  return spec;
}

const ShiftFamily& DerivationSpec::shift_family() const {
  if (!family_) throw ConfigError("derivation is not a shift family");
  return *family_;
}

Series DerivationSpec::logderiv(SpineIndex i) const {
  if (family_) {
    if (i.value < 0) throw ConfigError("spine label " + to_string(i) + " is not in the spine");
    return Series::monomial(family_->theta(i.value), family_->coefficient, spine_);
  }
  auto it = table_.find(i);
  if (it == table_.end()) {
    throw ConfigError("spine label " + to_string(i) + " is not in the spine");
  }
  return it->second;
}

Exponent DerivationSpec::theta(SpineIndex i) const {
  if (family_) return family_->theta(i.value);
  return logderiv(i).valuation();
}

Rational DerivationSpec::leading_coefficient(SpineIndex i) const {
  if (family_) return family_->coefficient;
  return logderiv(i).leading().coefficient;
}

std::vector<SpineIndex> DerivationSpec::labels() const {
  if (family_) throw ConfigError("a shift family has infinitely many labels");
  return {spine_->labels().begin(), spine_->labels().end()};
}

Exponent DerivationSpec::theta_min() const {
  if (!family_) {
    Exponent m = theta(spine_->labels().front());
    for (auto i : spine_->labels()) m = std::min(m, theta(i));
    return m;
  }
  // The sign of θ_{n+1} - θ_n does not depend on n.
  Exponent step = family_->theta(1) - family_->theta(0);
  if (step.sign() < 0) {
    throw DomainError("decreasing shift family: derivative of the error term is unbounded");
  }
  return family_->theta(0);
}

void DerivationSpec::cache_validation() {
  auto report = validate_hardy(*this);
  hardy_ = report.h3_ok;
  theta_tilde_ = report.theta_tilde;
}

Exponent DerivationSpec::derivative_cutoff(const Exponent& c) const {
  if (!hardy_) return c + theta_min();
  if (!c.is_zero()) return c + monomial_log_derivative(c, *this).valuation();
  SpineIndex phi = family_ ? SpineIndex{3} : spine_->labels().back();
  return theta(phi) - Exponent::unit(phi);
}

bool family_h3(const ShiftFamily& f, std::optional<HardyViolation>* witness) {
  auto fail = [&](std::int64_t delta, std::string reason) {
    if (witness) *witness = HardyViolation{SpineIndex{0}, SpineIndex{delta}, std::move(reason)};
    return false;
  };
  if (window_at(f, 0) != f.prefix) {
    return fail(1, "v_Γ(θ_φ0 - θ_φ1) = φ0 is not above φ0");
  }
  const std::size_t k_max = f.window.empty() ? 0 : f.window.size() - 1;
  // For n < m = n + δ the difference θ_m - θ_n vanishes below n + 1 and its
  // coefficient at n + j is D_j(δ) = (j < δ ? prefix : a_{j-δ}) - a_j,
  // independently of n. The pattern is stable once δ exceeds k_max + 1.
  for (std::size_t delta = 1; delta <= k_max + 2; ++delta) {
    int sign = 0;
    for (std::size_t j = 1; j <= k_max + delta && sign == 0; ++j) {
      Rational upper = j < delta ? f.prefix : window_at(f, j - delta);
      sign = sgn(upper - window_at(f, j));
    }
    auto d = static_cast<std::int64_t>(delta);
    if (sign == 0) return fail(d, "θ_φ0 equals θ_φ" + std::to_string(d));
    if (sign < 0) return fail(d, "θ_φ0 is not below θ_φ" + std::to_string(d));
  }
  return true;
}

bool check_right_shift_family(const Spine& spine, const ShiftFamily& family) {
  if (spine.is_finite()) throw ConfigError("shift families live on the naturals");
  bool theorem = family.prefix == 0 && window_at(family, 0) == 0 && window_at(family, 1) < 0;
  return theorem || family_h3(family);
}

HardyReport validate_hardy(const DerivationSpec& spec) {
  HardyReport report;
  if (spec.is_family()) {
    const auto& f = spec.shift_family();
    std::optional<HardyViolation> witness;
    report.h3_ok = family_h3(f, &witness);
    if (witness) report.violations.push_back(*witness);
    report.hfield_ok = f.coefficient < 0;
    if (!report.hfield_ok) {
      report.violations.push_back(
          {SpineIndex{0}, SpineIndex{0}, "leading coefficient of d(t_φ)/t_φ is positive"});
    }
    report.c1c2_ok = check_right_shift_family(*spec.spine(), f);
    if (report.h3_ok && f.prefix == 0) report.theta_tilde = Exponent{};
    return report;
  }

  auto labels = spec.labels();
  report.h3_ok = true;
  report.hfield_ok = true;
  report.c1c2_ok = true;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (spec.leading_coefficient(labels[i]) > 0) {
      report.hfield_ok = false;
      report.violations.push_back(
          {labels[i], labels[i], "leading coefficient of d(t_φ)/t_φ is positive"});
    }
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      Exponent a = spec.theta(labels[i]);
      Exponent b = spec.theta(labels[j]);
      if (!(a < b)) {
        report.h3_ok = false;
        report.violations.push_back(
            {labels[i], labels[j], "θ_" + label(labels[i]) + " is not below θ_" + label(labels[j])});
        continue;
      }
      auto v = (a - b).v_gamma();
      if (v && !(labels[i] < *v)) {
        report.h3_ok = false;
        report.violations.push_back({labels[i], labels[j],
                                     "v_Γ(θ difference) = " + label(*v) + " is not above " +
                                         label(labels[i])});
      }
    }
  }
  Exponent top = spec.theta(labels.front());
  for (auto i : labels) top = std::max(top, spec.theta(i));
  report.theta_tilde = top;
  return report;
}

Series monomial_log_derivative(const Exponent& alpha, const DerivationSpec& spec) {
  Series sum = Series::constant(0, spec.spine());
  for (const auto& [index, q] : alpha.entries()) sum += spec.logderiv(index) * q;
  return sum;
}

Series derive(const Series& a, const DerivationSpec& spec) {
  std::vector<Term<Exponent>> terms;
  for (const auto& t : a.terms()) {
    for (const auto& [index, q] : t.exponent.entries()) {
      Series ld = spec.logderiv(index);
      for (const auto& s : ld.terms()) {
        terms.push_back({t.exponent + s.exponent, t.coefficient * q * s.coefficient});
      }
    }
  }
  auto spine = Series::common_spine(a, Series::constant(0, spec.spine()));
  Series result = Series::from_terms(std::move(terms), spine);
  if (a.cutoff()) result = result.with_cutoff(spec.derivative_cutoff(*a.cutoff()));
  return result.with_approximate(a.approximate());
}

Series log_derivative(const Series& a, const DerivationSpec& spec, std::size_t max_terms) {
  if (a.no_known_terms()) throw DomainError("logarithmic derivative of zero");
  if (a.size() == 1 && !a.cutoff()) {
    return monomial_log_derivative(a.valuation(), spec).with_approximate(a.approximate());
  }
  return divide(derive(a, spec), a, max_terms).truncated(max_terms);
}

}  // namespace hahn
