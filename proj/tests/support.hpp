#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <random>
#include <vector>

#include "hahn/derivation.hpp"
#include "hahn/exponent.hpp"
#include "hahn/series.hpp"

namespace testing {

using hahn::Exponent;
using hahn::Rational;
using hahn::Series;
using hahn::SpineIndex;

inline std::shared_ptr<const hahn::Spine> rank3() {
  static const auto spine = std::make_shared<const hahn::Spine>(
      hahn::Spine::finite({SpineIndex{1}, SpineIndex{2}, SpineIndex{3}}));
  return spine;
}

inline std::shared_ptr<const hahn::Spine> naturals() {
  static const auto spine = std::make_shared<const hahn::Spine>(hahn::Spine::naturals());
  return spine;
}

/// Exponent over labels 1, 2, 3 from a dense tuple.
inline Exponent e3(Rational a, Rational b, Rational c) {
  return Exponent({{SpineIndex{1}, a}, {SpineIndex{2}, b}, {SpineIndex{3}, c}});
}

/// Exponent over the naturals from a dense prefix starting at label 0.
inline Exponent en(std::initializer_list<Rational> values) {
  std::vector<Exponent::Entry> entries;
  std::int64_t i = 0;
  for (const auto& v : values) entries.emplace_back(SpineIndex{i++}, v);
  return Exponent(std::move(entries));
}

inline Exponent unit(std::int64_t i, Rational q = 1) { return Exponent::unit(SpineIndex{i}, q); }

inline Series mono(const Exponent& e, Rational q = 1,
                   std::shared_ptr<const hahn::Spine> spine = rank3()) {
  return Series::monomial(e, q, std::move(spine));
}

inline Series constant(Rational q) { return Series::constant(q); }

/// d(t_1)/t_1 = -1, d(t_2)/t_2 = -t_2, d(t_3)/t_3 = -t_2 t_3: the germs
/// exp(-x), 1/x, 1/log x.
inline const hahn::DerivationSpec& leh3_spec() {
  static const auto spec = hahn::DerivationSpec::table(
      rank3(), {{SpineIndex{1}, Series::constant(-1)},
                {SpineIndex{2}, Series::monomial(e3(0, 1, 0), -1)},
                {SpineIndex{3}, Series::monomial(e3(0, 1, 1), -1)}});
  return spec;
}

/// t_n = 1/log_n(x): θ_n = 1_0 + ... + 1_n, coefficient -1.
inline const hahn::DerivationSpec& logs_spec() {
  static const auto spec = hahn::DerivationSpec::family({1, {1}, -1});
  return spec;
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

  Rational small_rational(long bound = 3, long max_den = 2) {
    Rational q(integer(-bound, bound), integer(1, max_den));
    q.canonicalize();
    return q;
  }

  Rational nonzero_rational(long bound = 3, long max_den = 2) {
    Rational q = 0;
    while (q == 0) q = small_rational(bound, max_den);
    return q;
  }

  /// Exponent with support drawn from the given labels.
  Exponent exponent(const std::vector<std::int64_t>& labels, long bound = 3, long max_den = 2,
                    double density = 0.6) {
    std::vector<Exponent::Entry> entries;
    for (auto label : labels) {
      if (coin(density)) entries.emplace_back(SpineIndex{label}, small_rational(bound, max_den));
    }
    return Exponent(std::move(entries));
  }

  Series series(const std::vector<std::int64_t>& labels,
                std::shared_ptr<const hahn::Spine> spine, std::size_t max_terms = 4,
                long bound = 3, long max_den = 2) {
    std::vector<hahn::Term<Exponent>> terms;
    auto n = static_cast<std::size_t>(integer(1, static_cast<long>(max_terms)));
    for (std::size_t i = 0; i < n; ++i) {
      terms.push_back({exponent(labels, bound, max_den), nonzero_rational(4, 3)});
    }
    return Series::from_terms(std::move(terms), spine);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace testing
