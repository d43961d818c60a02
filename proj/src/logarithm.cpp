#include "hahn/logarithm.hpp"

#include <cmath>

#include "hahn/errors.hpp"
#include "hahn/integration.hpp"

namespace hahn {

namespace {

constexpr std::int64_t kNaturalChecks = 5;
constexpr int kRecoverSteps = 256;

Series shift_monomial(std::int64_t n, const Rational& sign, std::shared_ptr<const Spine> spine) {
  return Series::monomial(Exponent::unit(SpineIndex{n + 1}, -1), sign, std::move(spine));
}

std::vector<SpineIndex> checked_labels(const Spine& spine) {
  if (spine.is_finite()) return {spine.labels().begin(), spine.labels().end()};
  std::vector<SpineIndex> labels;
  for (std::int64_t i = 0; i < kNaturalChecks; ++i) labels.push_back(SpineIndex{i});
  return labels;
}

}  // namespace

std::optional<CoefficientHooks::Value> CoefficientHooks::log_k(const Rational& q) const {
  if (q == 1) return Value{0, false};
  if (kind_ == Kind::rational || q <= 0) return std::nullopt;
  return Value{Rational(std::log(q.get_d())), true};
}

std::optional<CoefficientHooks::Value> CoefficientHooks::exp_k(const Rational& q) const {
  if (q == 0) return Value{1, false};
  if (kind_ == Kind::rational) return std::nullopt;
  double v = std::exp(q.get_d());
  if (!std::isfinite(v) || v == 0) return std::nullopt;
  return Value{Rational(v), true};
}

PreLogSpec PreLogSpec::table(std::shared_ptr<const Spine> spine,
                             std::map<SpineIndex, Series> logmono) {
  for (auto& [index, value] : logmono) {
    if (!spine->contains(index)) {
      throw ConfigError("pre-logarithm given for label " + to_string(index) +
                        " outside the spine");
    }
    for (const auto& t : value.terms()) spine->require(t.exponent);
    value = value.with_spine(spine);
  }
  PreLogSpec p;
  p.kind_ = Kind::table;
  p.spine_ = std::move(spine);
  p.table_ = std::move(logmono);
  return p;
}

PreLogSpec PreLogSpec::sigma_shift(Rational sign) {
  PreLogSpec p;
  p.kind_ = Kind::sigma_shift;
  p.spine_ = std::make_shared<const Spine>(Spine::naturals());
  p.sign_ = std::move(sign);
  return p;
}

PreLogSpec PreLogSpec::from_derivation(const DerivationSpec& spec, std::size_t max_terms) {
  PreLogSpec p;
  p.spine_ = spec.spine();
  if (spec.is_family()) {
    p.kind_ = Kind::from_derivation;
    p.derivation_ = std::make_shared<const DerivationSpec>(spec);
    return p;
  }
  p.kind_ = Kind::table;
  for (auto phi : spec.labels()) {
    auto r = integrate(spec.logderiv(phi), spec, max_terms);
    if (r.exact) p.table_.emplace(phi, r.value);
  }
  return p;
}

bool PreLogSpec::defined(SpineIndex i) const {
  if (!spine_->contains(i)) return false;
  if (kind_ == Kind::table) return table_.count(i) > 0;
  return true;
}

Series PreLogSpec::logmono(SpineIndex i) const {
  if (!spine_->contains(i)) {
    throw ConfigError("spine label " + to_string(i) + " is not in the spine");
  }
  switch (kind_) {
    case Kind::table: {
      auto it = table_.find(i);
      if (it == table_.end()) {
        throw DomainError("pre-logarithm undefined at t" + to_string(i));
      }
      return it->second;
    }
    case Kind::sigma_shift:
      return shift_monomial(i.value, sign_, spine_);
    case Kind::from_derivation: {
      {
        std::lock_guard lock(memo_->mutex);
        auto it = memo_->values.find(i);
        if (it != memo_->values.end()) return it->second;
      }
      auto r = integrate(derivation_->logderiv(i), *derivation_, 32);
      if (!r.exact) throw DomainError("pre-logarithm undefined at t" + to_string(i));
      std::lock_guard lock(memo_->mutex);
      memo_->values.emplace(i, r.value);
      return r.value;
    }
  }
  return {};
}

std::vector<SpineIndex> PreLogSpec::defined_labels() const {
  std::vector<SpineIndex> out;
  for (auto i : checked_labels(*spine_)) {
    if (defined(i)) out.push_back(i);
  }
  return out;
}

std::optional<Exponent> PreLogSpec::recover(const Series& s) const {
  if (!s.exact()) return std::nullopt;
  Exponent alpha;
  Series rest = s;
  for (int step = 0; step < kRecoverSteps; ++step) {
    if (rest.is_zero()) return alpha;
    const auto& lead = rest.leading();
    if (lead.exponent.sign() >= 0) return std::nullopt;
    std::vector<SpineIndex> candidates;
    if (spine_->is_finite()) {
      candidates.assign(spine_->labels().begin(), spine_->labels().end());
    } else {
      std::int64_t top = lead.exponent.max_index()->value;
      for (std::int64_t i = 0; i <= top; ++i) candidates.push_back(SpineIndex{i});
    }
    bool matched = false;
    for (auto phi : candidates) {
      if (!defined(phi)) continue;
      Series m = logmono(phi);
      if (m.no_known_terms() || m.valuation() != lead.exponent) continue;
      Rational r = lead.coefficient / m.leading().coefficient;
      alpha += Exponent::unit(phi, r);
      rest -= m * r;
      matched = true;
      break;
    }
    if (!matched) return std::nullopt;
  }
  return std::nullopt;
}

Series prelog_monomial(const Exponent& alpha, const PreLogSpec& spec) {
  Series sum = Series::constant(0, spec.spine());
  for (const auto& [index, q] : alpha.entries()) sum += spec.logmono(index) * q;
  return sum;
}

Series log_series(const Series& a, const PreLogSpec& spec, const CoefficientHooks& hooks,
                  std::size_t max_terms) {
  if (a.no_known_terms() || a.leading().coefficient < 0) {
    throw DomainError("logarithm needs a positive series");
  }
  const auto& lead = a.leading();
  auto lk = hooks.log_k(lead.coefficient);
  if (!lk) {
    throw DomainError("log_k(" + to_string(lead.coefficient) +
                      ") is undefined under rational coefficient hooks");
  }
  Series unit = a * Series::monomial(-lead.exponent, 1 / lead.coefficient);
  Series eps = unit - Series::constant(1);
  Series result = prelog_monomial(lead.exponent, spec) + Series::constant(lk->value) +
                  log1p_unit(eps, max_terms);
  return result.with_approximate(lk->approximate || a.approximate());
}

Series exp_series(const Series& a, const CoefficientHooks& hooks, std::size_t max_terms) {
  if (!a.infinite_part().is_zero()) {
    throw DomainError("exponential of an infinite series needs the EL tower");
  }
  auto c = hooks.exp_k(a.constant_term());
  if (!c) {
    throw DomainError("exp_k(" + to_string(a.constant_term()) +
                      ") is undefined under rational coefficient hooks");
  }
  Series small = a.infinitesimal_part();
  if (a.cutoff() && !(Exponent{} < *a.cutoff())) {
    throw DomainError("exponential undefined: the error term is not infinitesimal");
  }
  return (exp_infinitesimal(small, max_terms) * c->value).with_approximate(c->approximate);
}

PrelogReport validate_prelog(const DerivationSpec& dspec, const PreLogSpec& pspec) {
  PrelogReport report;
  report.theta_tilde = dspec.theta_tilde();
  report.condition1 = true;
  report.condition2 = true;
  report.compatible = true;
  report.growth = true;
  for (auto phi : checked_labels(*dspec.spine())) {
    Series ld = dspec.logderiv(phi);
    bool bad2 = false;
    for (const auto& t : ld.terms()) {
      if (report.theta_tilde && t.exponent == *report.theta_tilde) {
        report.condition1 = false;
        report.condition1_witnesses.push_back(phi);
      }
      try {
        Series ai = monomial_ai(Series::monomial(t.exponent, 1, dspec.spine()), dspec);
        if (!(ai.valuation() < Exponent{})) bad2 = true;
      } catch (const DomainError&) {
        bad2 = true;
      } catch (const InvariantViolation&) {
        bad2 = true;
      }
    }
    if (bad2) {
      report.condition2 = false;
      report.condition2_witnesses.push_back(phi);
    }
    if (!pspec.defined(phi)) {
      report.missing.push_back(phi);
      continue;
    }
    Series lm = pspec.logmono(phi);
    if (derive(lm, dspec) != ld) {
      report.compatible = false;
      report.incompatible.push_back(phi);
    }
    bool grows = !lm.no_known_terms() && lm.valuation() < Exponent{} &&
                 Exponent{} < lm.valuation() + Exponent::unit(phi);
    if (!grows) {
      report.growth = false;
      report.growth_witnesses.push_back(phi);
    }
  }
  return report;
}

}  // namespace hahn
