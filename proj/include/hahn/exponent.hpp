#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hahn/rational.hpp"

namespace hahn {

/// Label of an Archimedean class. Labels are ordered as integers; on the
/// lazy spine of naturals the label is the class number itself.
struct SpineIndex {
  std::int64_t value = 0;

  friend auto operator<=>(SpineIndex, SpineIndex) = default;
};

inline std::string to_string(SpineIndex i) { return std::to_string(i.value); }

class Exponent;

/// The ordered set of Archimedean classes. Two families are supported: an
/// explicit finite list of labels, and the naturals 0 < 1 < 2 < ... carrying
/// the right shift n -> n + 1. Every rib is the rational line.
class Spine {
 public:
  enum class Kind { finite, naturals };

  /// Labels must be strictly increasing and non-empty.
  static Spine finite(std::vector<SpineIndex> labels);
  static Spine naturals();

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  std::span<const SpineIndex> labels() const noexcept { return labels_; }

  bool contains(SpineIndex i) const;
  bool contains(const Exponent& e) const;

  /// Throws ConfigError naming the first label of e outside the spine.
  void require(const Exponent& e) const;

  /// The right shift; only the naturals carry one.
  std::optional<SpineIndex> right_shift(SpineIndex i) const;

  friend bool operator==(const Spine&, const Spine&) = default;

 private:
  Spine(Kind kind, std::vector<SpineIndex> labels)
      : kind_(kind), labels_(std::move(labels)) {}

  Kind kind_;
  std::vector<SpineIndex> labels_;
};

/// An element of the Hahn group: a finitely supported map from spine labels
/// to rationals, stored as an ascending list without zero entries. The order
/// is lexicographic: the sign of a - b is the sign of its coefficient at the
/// smallest label where a and b differ.
class Exponent {
 public:
  using Entry = std::pair<SpineIndex, Rational>;

  Exponent() = default;
  /// Entries in any order; repeated labels are summed and zeros dropped.
  explicit Exponent(std::vector<Entry> entries);

  static Exponent unit(SpineIndex i, const Rational& coefficient = 1);

  std::span<const Entry> entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return entries_.empty(); }
  Rational coefficient(SpineIndex i) const;

  /// Natural valuation: the smallest label in the support, nullopt standing
  /// for infinity (the zero exponent).
  std::optional<SpineIndex> v_gamma() const;
  /// Coefficient at v_gamma(); zero for the zero exponent.
  Rational leading_coefficient() const;
  std::optional<SpineIndex> max_index() const;

  int sign() const;
  Exponent abs() const { return sign() < 0 ? -*this : *this; }

  Exponent operator-() const;
  Exponent& operator+=(const Exponent& other);
  Exponent& operator-=(const Exponent& other);
  Exponent& operator*=(const Rational& factor);

  friend Exponent operator+(Exponent a, const Exponent& b) { return a += b; }
  friend Exponent operator-(Exponent a, const Exponent& b) { return a -= b; }
  friend Exponent operator*(Exponent a, const Rational& q) { return a *= q; }
  friend Exponent operator*(const Rational& q, Exponent a) { return a *= q; }

  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b);
  friend bool operator==(const Exponent& a, const Exponent& b);

 private:
  std::vector<Entry> entries_;
};

/// Multiplication of an exponent by a rational, shared with EL exponents
/// through argument-dependent lookup in the generic series code.
inline Exponent scale_exponent(const Exponent& e, const Rational& q) { return e * q; }

/// Lexicographic comparison of two exponents of the same spine; throws
/// ConfigError when either uses a label outside the spine.
std::strong_ordering compare_exponents(const Spine& spine, const Exponent& a,
                                       const Exponent& b);

inline std::optional<SpineIndex> v_gamma(const Exponent& a) { return a.v_gamma(); }

/// "(1,0,-1/2)" over a finite spine, "{0:1, 3:-2}" over the naturals.
std::string to_string(const Exponent& e, const Spine& spine);

/// True iff some n gives n|a| >= |b| and n|b| >= |a|; for nonzero inputs this
/// is v_gamma(a) == v_gamma(b).
bool archimedean_equiv(const Exponent& a, const Exponent& b);

}  // namespace hahn
