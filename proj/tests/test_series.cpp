#include <doctest.h>

#include "hahn/errors.hpp"
#include "support.hpp"

using namespace testing;
using hahn::compare_series;

namespace {

const Series t1 = mono(e3(1, 0, 0));
const Series t2 = mono(e3(0, 1, 0));
const Series t3 = mono(e3(0, 0, 1));
const Series one = constant(1);

}  // namespace

TEST_SUITE("series_core") {
  TEST_CASE("addition examples") {
    CHECK((t2 + (-t2)).is_zero());
    Series s = (one + t1) + t2;
    REQUIRE(s.size() == 3);
    CHECK(s.terms()[0].exponent == Exponent{});
    CHECK(s.terms()[1].exponent == e3(0, 1, 0));
    CHECK(s.terms()[2].exponent == e3(1, 0, 0));
    CHECK(s + Series{} == s);
  }

  TEST_CASE("multiplication examples") {
    CHECK(mono(e3(1, 0, 0)) * mono(e3(0, -1, 0)) == mono(e3(1, -1, 0)));
    CHECK((one + t2) * (one - t2) == one - t2 * t2);
    Series a = t1 + mono(e3(0, 2, -1), Rational(3, 2));
    CHECK(a * one == a);
  }

  TEST_CASE("inversion examples") {
    Series a = t1 * (one - t1 * mono(e3(0, -1, 0)));
    Series inv = hahn::invert(a, 4);
    CHECK_FALSE(inv.exact());
    REQUIRE(inv.size() == 4);
    for (int n = 0; n < 4; ++n) {
      CHECK(inv.terms()[n].exponent == e3(n - 1, -n, 0));
      CHECK(inv.terms()[n].coefficient == 1);
    }
    CHECK(*inv.cutoff() == e3(3, -4, 0));

    Series m = mono(e3(2, -1, Rational(1, 3)), -3);
    Series mi = hahn::invert(m, 5);
    CHECK(mi.exact());
    CHECK(mi == mono(e3(-2, 1, Rational(-1, 3)), Rational(-1, 3)));
    CHECK(hahn::invert(constant(2), 7) == constant(Rational(1, 2)));
    CHECK_THROWS_AS(hahn::invert(Series{}, 3), hahn::DomainError);
  }

  TEST_CASE("leading term examples") {
    auto lead = (t2 + t1).leading();
    CHECK(lead.exponent == e3(0, 1, 0));
    CHECK(lead.coefficient == 1);
    CHECK(constant(5).leading().exponent == Exponent{});
    CHECK(constant(5).leading().coefficient == 5);
    Series expansion;
    for (int n = 0; n < 6; ++n) expansion += mono(e3(n + 1, -n, 0));
    CHECK(expansion.leading().exponent == e3(1, 0, 0));
    CHECK_THROWS_AS(Series{}.leading(), hahn::DomainError);
  }

  TEST_CASE("order examples") {
    CHECK(compare_series(t1, t2) < 0);
    CHECK(compare_series(t3, one) < 0);
    CHECK(compare_series(t1 + t3, t1 + t3) == 0);
    Series undecided = Series::big_o(e3(0, 1, 0), rank3());
    CHECK_THROWS_AS(compare_series(undecided, Series{}), hahn::DomainError);
  }

  TEST_CASE("error terms propagate") {
    Series a = (one + t2).with_cutoff(e3(0, 2, 0));
    CHECK_FALSE(a.exact());
    Series b = a * a;
    REQUIRE(b.cutoff());
    CHECK(*b.cutoff() == e3(0, 2, 0));
    CHECK(b.known_part() == one + t2 * Rational(2));
    Series c = a * t3;
    CHECK(*c.cutoff() == e3(0, 2, 1));
    CHECK(hahn::agree(a + t1, one + t2));
  }

  TEST_CASE("spine mismatch is a configuration error") {
    Series x = mono(unit(0), 1, naturals());
    CHECK_THROWS_AS(x + t1, hahn::ConfigError);
    CHECK_NOTHROW(x + constant(3));
  }

  TEST_CASE("field axioms on random series") {
    Random rng(21);
    const std::vector<std::int64_t> labels{1, 2, 3};
    for (int i = 0; i < 300; ++i) {
      Series a = rng.series(labels, rank3());
      Series b = rng.series(labels, rank3());
      Series c = rng.series(labels, rank3());
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK((a - a).is_zero());
      if (!a.is_zero() && !b.is_zero()) {
        CHECK((a * b).valuation() == a.valuation() + b.valuation());
      }
      if (!(a + b).is_zero()) {
        CHECK(!((a + b).valuation() < std::min(a.valuation(), b.valuation())));
      }
    }
  }

  TEST_CASE("inverse is exact up to the recorded error term") {
    Random rng(22);
    const std::vector<std::int64_t> labels{1, 2, 3};
    for (int i = 0; i < 200; ++i) {
      Series a = rng.series(labels, rank3(), 3);
      if (a.is_zero()) continue;
      const std::size_t budget = 6;
      Series inv = hahn::invert(a, budget);
      Series product = a * inv;
      if (inv.exact()) {
        CHECK(product == one);
        continue;
      }
      // The known part of a·a^{-1} is exactly 1. The error starts no lower
      // than budget·v(ε) unless the term cap moved it down.
      CHECK(product.known_part() == one);
      CHECK(Exponent{} < *product.cutoff());
      if (inv.size() == budget) continue;
      const auto& lead = a.leading();
      Series eps = one - a * Series::monomial(-lead.exponent, 1 / lead.coefficient);
      CHECK(!(*product.cutoff() < hahn::scale_exponent(eps.valuation(), budget)));
    }
  }

  TEST_CASE("ordered field properties") {
    Random rng(23);
    const std::vector<std::int64_t> labels{1, 2, 3};
    for (int i = 0; i < 500; ++i) {
      Series a = rng.series(labels, rank3());
      Series b = rng.series(labels, rank3());
      if (a.is_zero() || b.is_zero()) continue;
      if (hahn::sign(a) > 0 && hahn::sign(b) > 0) {
        CHECK(hahn::sign(a + b) > 0);
        CHECK(hahn::sign(a * b) > 0);
      }
      auto ab = compare_series(a, b);
      CHECK(compare_series(b, a) == (0 <=> ab));
      if (hahn::sign(a) > 0 && Exponent{} < a.valuation()) {
        CHECK(compare_series(a, constant(Rational(1, 1000))) < 0);
      }
    }
  }
}
