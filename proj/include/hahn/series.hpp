#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "hahn/errors.hpp"
#include "hahn/exponent.hpp"
#include "hahn/rational.hpp"

namespace hahn {

template <class Exp>
struct Term {
  Exp exponent;
  Rational coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

/// A generalized series with finitely many stored terms, ascending by
/// exponent. Precision is tracked by an optional cutoff: when present, every
/// term with exponent >= cutoff is unknown (the value is "known terms +
/// O(t^cutoff)"). A series is exact when it has no cutoff and its
/// coefficients did not pass through floating-point hooks.
///
/// Exp is Exponent for the base field and ELExponent for the EL tower. It
/// must be totally ordered, form a group under + and -, have a zero value
/// Exp{}, and support scale_exponent(e, q).
template <class Exp>
class BasicSeries {
 public:
  using ExponentType = Exp;
  using TermType = Term<Exp>;

  BasicSeries() = default;

  static BasicSeries constant(const Rational& q, std::shared_ptr<const Spine> spine = {}) {
    return monomial(Exp{}, q, std::move(spine));
  }

  static BasicSeries monomial(Exp e, const Rational& q = 1,
                              std::shared_ptr<const Spine> spine = {}) {
    BasicSeries s;
    s.spine_ = std::move(spine);
    if (q != 0) s.terms_.push_back({std::move(e), q});
    return s;
  }

  /// Terms in any order; repeated exponents are summed and zeros dropped.
  static BasicSeries from_terms(std::vector<TermType> terms,
                                std::shared_ptr<const Spine> spine = {}) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const TermType& a, const TermType& b) { return a.exponent < b.exponent; });
    BasicSeries s;
    s.spine_ = std::move(spine);
    for (auto& t : terms) {
      if (!s.terms_.empty() && s.terms_.back().exponent == t.exponent) {
        s.terms_.back().coefficient += t.coefficient;
      } else {
        s.terms_.push_back(std::move(t));
      }
    }
    std::erase_if(s.terms_, [](const TermType& t) { return t.coefficient == 0; });
    return s;
  }

  /// The pure error term O(t^e).
  static BasicSeries big_o(Exp e, std::shared_ptr<const Spine> spine = {}) {
    BasicSeries s;
    s.spine_ = std::move(spine);
    s.cutoff_ = std::move(e);
    return s;
  }

  const std::vector<TermType>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::shared_ptr<const Spine>& spine() const noexcept { return spine_; }
  const std::optional<Exp>& cutoff() const noexcept { return cutoff_; }
  bool approximate() const noexcept { return approximate_; }
  bool exact() const noexcept { return !cutoff_ && !approximate_; }

  /// True for the exact zero series only.
  bool is_zero() const noexcept { return terms_.empty() && !cutoff_; }
  /// True when no term is known (zero, or a pure error term).
  bool no_known_terms() const noexcept { return terms_.empty(); }

  const TermType& leading() const {
    if (terms_.empty()) {
      throw DomainError(cutoff_ ? "leading term lies inside the truncation error"
                                : "the zero series has no leading term");
    }
    return terms_.front();
  }
  const Exp& valuation() const { return leading().exponent; }

  /// Smallest exponent that may carry a nonzero term: the valuation, or the
  /// cutoff for a pure error term. nullopt for exact zero.
  std::optional<Exp> lower_bound() const {
    if (!terms_.empty()) return terms_.front().exponent;
    return cutoff_;
  }

  Rational coefficient(const Exp& e) const {
    for (const auto& t : terms_) {
      if (t.exponent == e) return t.coefficient;
    }
    return 0;
  }

  bool is_constant() const {
    return exact() && (terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == Exp{}));
  }

  /// Adds the error term O(t^c), dropping known terms at or above c.
  BasicSeries with_cutoff(const Exp& c) const {
    BasicSeries r = *this;
    if (r.cutoff_ && *r.cutoff_ <= c) return r;
    r.cutoff_ = c;
    std::erase_if(r.terms_, [&](const TermType& t) { return !(t.exponent < c); });
    return r;
  }

  /// Keeps at most n known terms; dropped terms move into the error term.
  BasicSeries truncated(std::size_t n) const {
    if (terms_.size() <= n) return *this;
    return with_cutoff(terms_[n].exponent);
  }

  BasicSeries with_approximate(bool flag = true) const {
    BasicSeries r = *this;
    r.approximate_ = r.approximate_ || flag;
    return r;
  }

  BasicSeries with_spine(std::shared_ptr<const Spine> spine) const {
    BasicSeries r = *this;
    r.spine_ = std::move(spine);
    return r;
  }

  /// Known terms only, as an exact series.
  BasicSeries known_part() const {
    BasicSeries r;
    r.spine_ = spine_;
    r.terms_ = terms_;
    return r;
  }

  /// Terms with exponent < 0, == 0 and > 0 respectively.
  BasicSeries infinite_part() const {
    return select([](const Exp& e) { return e < Exp{}; });
  }
  Rational constant_term() const { return coefficient(Exp{}); }
  BasicSeries infinitesimal_part() const {
    BasicSeries r = select([](const Exp& e) { return Exp{} < e; });
    r.cutoff_ = cutoff_;
    r.approximate_ = approximate_;
    return r;
  }

  BasicSeries operator-() const {
    BasicSeries r = *this;
    for (auto& t : r.terms_) t.coefficient = -t.coefficient;
    return r;
  }

  BasicSeries& operator+=(const BasicSeries& other) { return *this = add(*this, other, 1); }
  BasicSeries& operator-=(const BasicSeries& other) { return *this = add(*this, other, -1); }
  BasicSeries& operator*=(const BasicSeries& other) { return *this = multiply(*this, other); }
  BasicSeries& operator*=(const Rational& q) {
    if (q == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.coefficient *= q;
    return *this;
  }

  friend BasicSeries operator+(const BasicSeries& a, const BasicSeries& b) { return add(a, b, 1); }
  friend BasicSeries operator-(const BasicSeries& a, const BasicSeries& b) { return add(a, b, -1); }
  friend BasicSeries operator*(const BasicSeries& a, const BasicSeries& b) { return multiply(a, b); }
  friend BasicSeries operator*(BasicSeries a, const Rational& q) { return a *= q; }
  friend BasicSeries operator*(const Rational& q, BasicSeries a) { return a *= q; }

  /// Structural equality: same terms, same error term, same exactness.
  friend bool operator==(const BasicSeries& a, const BasicSeries& b) {
    return a.terms_ == b.terms_ && a.cutoff_ == b.cutoff_ && a.approximate_ == b.approximate_;
  }

  /// Multiplies every exponent by t^e (exact shift of the support).
  BasicSeries shifted(const Exp& e) const {
    BasicSeries r = *this;
    for (auto& t : r.terms_) t.exponent = t.exponent + e;
    if (r.cutoff_) r.cutoff_ = *r.cutoff_ + e;
    return r;
  }

  static std::shared_ptr<const Spine> common_spine(const BasicSeries& a, const BasicSeries& b) {
    if (!a.spine_) return b.spine_;
    if (!b.spine_ || a.spine_ == b.spine_ || *a.spine_ == *b.spine_) return a.spine_;
    throw ConfigError("series over different spines");
  }

 private:
  template <class Pred>
  BasicSeries select(Pred keep) const {
    BasicSeries r;
    r.spine_ = spine_;
    for (const auto& t : terms_) {
      if (keep(t.exponent)) r.terms_.push_back(t);
    }
    return r;
  }

  static std::optional<Exp> min_cutoff(const std::optional<Exp>& a, const std::optional<Exp>& b) {
    if (!a) return b;
    if (!b) return a;
    return *b < *a ? b : a;
  }

  static BasicSeries add(const BasicSeries& a, const BasicSeries& b, int factor) {
    BasicSeries r;
    r.spine_ = common_spine(a, b);
    r.cutoff_ = min_cutoff(a.cutoff_, b.cutoff_);
    r.approximate_ = a.approximate_ || b.approximate_;
    const auto& x = a.terms_;
    const auto& y = b.terms_;
    r.terms_.reserve(x.size() + y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].exponent < y[j].exponent)) {
        r.terms_.push_back(x[i++]);
      } else if (i == x.size() || y[j].exponent < x[i].exponent) {
        r.terms_.push_back({y[j].exponent, factor * y[j].coefficient});
        ++j;
      } else {
        Rational c = x[i].coefficient + factor * y[j].coefficient;
        if (c != 0) r.terms_.push_back({x[i].exponent, std::move(c)});
        ++i;
        ++j;
      }
    }
    if (r.cutoff_) {
      const Exp& c = *r.cutoff_;
      std::erase_if(r.terms_, [&](const TermType& t) { return !(t.exponent < c); });
    }
    return r;
  }

  static BasicSeries multiply(const BasicSeries& a, const BasicSeries& b) {
    BasicSeries r;
    r.spine_ = common_spine(a, b);
    r.approximate_ = a.approximate_ || b.approximate_;
    if (a.is_zero() || b.is_zero()) return r;
    if (b.cutoff_) r.cutoff_ = *a.lower_bound() + *b.cutoff_;
    if (a.cutoff_) r.cutoff_ = min_cutoff(r.cutoff_, *b.lower_bound() + *a.cutoff_);
    std::vector<TermType> products;
    products.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) {
        Exp e = s.exponent + t.exponent;
        if (r.cutoff_ && !(e < *r.cutoff_)) continue;
        products.push_back({std::move(e), s.coefficient * t.coefficient});
      }
    }
    BasicSeries merged = from_terms(std::move(products), r.spine_);
    r.terms_ = std::move(merged.terms_);
    return r;
  }

  std::shared_ptr<const Spine> spine_;
  std::vector<TermType> terms_;
  std::optional<Exp> cutoff_;
  bool approximate_ = false;
};

/// Sign of a - b, i.e. the sign of the leading coefficient of the difference.
/// Throws DomainError when the difference vanishes on its known terms but
/// carries an error term, since the order is then undecidable.
template <class Exp>
std::strong_ordering compare_series(const BasicSeries<Exp>& a, const BasicSeries<Exp>& b) {
  BasicSeries<Exp> d = a - b;
  if (d.no_known_terms()) {
    if (d.cutoff()) throw DomainError("comparison undecidable within the truncation error");
    return std::strong_ordering::equal;
  }
  return sgn(d.leading().coefficient) > 0 ? std::strong_ordering::greater
                                          : std::strong_ordering::less;
}

template <class Exp>
int sign(const BasicSeries<Exp>& a) {
  auto c = compare_series(a, BasicSeries<Exp>{});
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

/// True when a and b agree on every exponent below both error terms, i.e.
/// their difference has no known term. Exact inputs must be equal.
template <class Exp>
bool agree(const BasicSeries<Exp>& a, const BasicSeries<Exp>& b) {
  return (a - b).no_known_terms();
}

/// Σ_{n<count} coefficients[n]·ε^n for v(ε) > 0, with the tail
/// O(t^{count·v(ε)}) recorded as error term and every intermediate power
/// capped at max_terms known terms. coefficients.size() == count.
template <class Exp>
BasicSeries<Exp> power_series(const BasicSeries<Exp>& eps, const std::vector<Rational>& coefficients,
                              std::size_t max_terms) {
  using S = BasicSeries<Exp>;
  S result = S::constant(0, eps.spine());
  if (eps.is_zero()) {
    if (!coefficients.empty()) result = S::constant(coefficients[0], eps.spine());
    return result;
  }
  auto lo = eps.lower_bound();
  if (!(Exp{} < *lo)) throw DomainError("power series argument must be infinitesimal");
  Exp tail = scale_exponent(*lo, Rational(static_cast<long>(coefficients.size())));
  result = result.with_cutoff(tail);
  S power = S::constant(1, eps.spine());
  for (std::size_t n = 0; n < coefficients.size(); ++n) {
    if (n > 0) power = (power * eps).with_cutoff(tail).truncated(max_terms);
    if (power.no_known_terms() && !power.approximate()) break;
    if (coefficients[n] != 0) result = result + power * coefficients[n];
  }
  result = result.with_approximate(eps.approximate());
  return result.truncated(max_terms);
}

/// Inverse via a = c·t^α·(1 - ε): c^{-1} t^{-α} Σ_{n<max_terms} ε^n. Exact iff
/// a is an exact monomial.
template <class Exp>
BasicSeries<Exp> invert(const BasicSeries<Exp>& a, std::size_t max_terms) {
  using S = BasicSeries<Exp>;
  if (a.is_zero()) throw DomainError("division by zero");
  if (max_terms == 0) throw DomainError("term budget must be positive");
  const auto& lead = a.leading();
  Rational c = lead.coefficient;
  Exp alpha = lead.exponent;
  S unit = (a * S::monomial(-alpha, 1 / c, a.spine()));
  S eps = S::constant(1, a.spine()) - unit;
  S r;
  if (eps.is_zero()) {
    r = S::constant(1, a.spine());
  } else {
    r = power_series(eps, std::vector<Rational>(max_terms, Rational(1)), max_terms);
  }
  return (r * S::monomial(-alpha, 1 / c, a.spine())).with_approximate(a.approximate());
}

template <class Exp>
BasicSeries<Exp> divide(const BasicSeries<Exp>& a, const BasicSeries<Exp>& b,
                        std::size_t max_terms) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (b.exact() && b.size() == 1) {
    const auto& t = b.leading();
    return a * BasicSeries<Exp>::monomial(-t.exponent, 1 / t.coefficient, b.spine());
  }
  return (a * invert(b, max_terms)).truncated(std::max<std::size_t>(max_terms, a.size()));
}

/// Integer power; negative n inverts first.
template <class Exp>
BasicSeries<Exp> pow(const BasicSeries<Exp>& a, long n, std::size_t max_terms) {
  using S = BasicSeries<Exp>;
  if (n < 0) return pow(invert(a, max_terms), -n, max_terms);
  S result = S::constant(1, a.spine());
  S base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

using Series = BasicSeries<Exponent>;

}  // namespace hahn
