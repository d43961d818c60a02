#include <doctest.h>

#include "hahn/errors.hpp"
#include "support.hpp"

using namespace testing;
using hahn::derive;
using hahn::DerivationSpec;
using hahn::ShiftFamily;

namespace {

Series t(int i) { return mono(unit(i)); }
Series n(int i, Rational q = 1) { return mono(unit(i, q), 1, naturals()); }

// Brute-force Hardy check of a shift family over the pairs n < m <= limit.
bool brute_force_h3(const ShiftFamily& f, int limit) {
  for (int i = 0; i <= limit; ++i) {
    for (int j = i + 1; j <= limit; ++j) {
      Exponent a = f.theta(i);
      Exponent b = f.theta(j);
      if (!(a < b)) return false;
      auto v = (a - b).v_gamma();
      if (v && v->value <= i) return false;
    }
  }
  return true;
}

struct FieldCase {
  const char* name;
  const DerivationSpec* spec;
  std::vector<std::int64_t> labels;
  std::shared_ptr<const hahn::Spine> spine;
};

std::vector<FieldCase> cases() {
  return {{"leh3", &leh3_spec(), {1, 2, 3}, rank3()},
          {"logs", &logs_spec(), {0, 1, 2, 3}, naturals()}};
}

}  // namespace

TEST_SUITE("derivation") {
  TEST_CASE("derivative examples") {
    CHECK(derive(t(1), leh3_spec()) == -t(1));
    CHECK(derive(t(2), leh3_spec()) == -(t(2) * t(2)));
    CHECK(derive(t(3), leh3_spec()) == -mono(e3(0, 1, 2)));
    Series x_exp = t(1) * mono(unit(2, -1));
    CHECK(derive(x_exp, leh3_spec()) == -x_exp + t(1));
    CHECK(derive(constant(7), leh3_spec()).is_zero());
  }

  TEST_CASE("logarithmic derivative examples") {
    CHECK(hahn::log_derivative(mono(e3(0, 1, 1)), leh3_spec(), 8) ==
          -t(2) - t(2) * t(3));
    CHECK(hahn::log_derivative(t(3), leh3_spec(), 8) == -t(2) * t(3));
    CHECK(hahn::log_derivative(constant(1), leh3_spec(), 8).is_zero());
    CHECK_THROWS_AS(hahn::log_derivative(Series{}, leh3_spec(), 8), hahn::DomainError);
  }

  TEST_CASE("validation of the rank-3 field") {
    auto report = hahn::validate_hardy(leh3_spec());
    CHECK(report.h3_ok);
    CHECK(report.hfield_ok);
    CHECK(report.c1c2_ok);
    REQUIRE(report.theta_tilde);
    CHECK(*report.theta_tilde == e3(0, 1, 1));
    CHECK(report.violations.empty());
  }

  TEST_CASE("positive logarithmic derivative breaks the H-field condition") {
    auto spec = DerivationSpec::table(rank3(), {{SpineIndex{1}, constant(-1)},
                                                {SpineIndex{2}, t(2)},
                                                {SpineIndex{3}, -t(2) * t(3)}});
    auto report = hahn::validate_hardy(spec);
    CHECK_FALSE(report.hfield_ok);
    CHECK_FALSE(report.violations.empty());
  }

  TEST_CASE("validation of the log-iterate family") {
    auto report = hahn::validate_hardy(logs_spec());
    CHECK(report.h3_ok);
    CHECK(report.hfield_ok);
    CHECK(report.c1c2_ok);
    CHECK_FALSE(report.theta_tilde.has_value());
  }

  TEST_CASE("right-shift families") {
    CHECK(hahn::check_right_shift_family(*naturals(), {0, {0, -1}, -1}));
    CHECK_FALSE(hahn::check_right_shift_family(*naturals(), {0, {0, 1}, -1}));
    CHECK(hahn::check_right_shift_family(*naturals(), {1, {1}, -1}));
    CHECK_THROWS_AS(hahn::check_right_shift_family(*rank3(), {1, {1}, -1}), hahn::ConfigError);
    auto report = hahn::validate_hardy(DerivationSpec::family({0, {0, -1}, -1}));
    CHECK(report.h3_ok);
    REQUIRE(report.theta_tilde);
    CHECK(report.theta_tilde->is_zero());
  }

  TEST_CASE("symbolic family check agrees with brute force") {
    Random rng(31);
    for (int i = 0; i < 3000; ++i) {
      ShiftFamily f;
      f.prefix = rng.integer(-1, 2);
      auto k = rng.integer(1, 3);
      for (long j = 0; j < k; ++j) f.window.push_back(rng.integer(-2, 2));
      if (rng.coin(0.5)) f.window[0] = f.prefix;
      CHECK(hahn::family_h3(f) == brute_force_h3(f, 10));
    }
  }

  TEST_CASE("log-iterate derivatives") {
    // d(t_0) = -t_0^2 (x^{-1}), d(t_1) = -t_0 t_1^2.
    CHECK(derive(n(0), logs_spec()) == -n(0) * n(0));
    CHECK(derive(n(1), logs_spec()) == -n(0) * n(1) * n(1));
    CHECK(derive(n(1, -1), logs_spec()) == n(0));
  }

  TEST_CASE("derivative of an error term") {
    Series a = (t(2) + t(3)).with_cutoff(e3(0, 2, 0));
    Series d = derive(a, leh3_spec());
    REQUIRE(d.cutoff());
    // l'Hospital: the tail O(t_2^2) differentiates into O(v(d(t_2^2))).
    CHECK(*d.cutoff() == e3(0, 3, 0));
    CHECK(d.known_part() == -(t(2) * t(2)) - mono(e3(0, 1, 2)));
  }

  TEST_CASE("Hardy axioms on random series") {
    Random rng(32);
    for (const auto& c : cases()) {
      CAPTURE(c.name);
      const auto& spec = *c.spec;
      for (int i = 0; i < 300; ++i) {
        Series a = rng.series(c.labels, c.spine);
        Series b = rng.series(c.labels, c.spine);
        if (a.is_zero() || b.is_zero()) continue;
        Series da = derive(a, spec);
        Series db = derive(b, spec);
        CHECK(derive(a * b, spec) == da * b + a * db);
        CHECK(da.is_zero() == a.is_constant());
        Exponent va = a.valuation();
        Exponent vb = b.valuation();
        if (!va.is_zero() && !vb.is_zero()) {
          CHECK((va <= vb) == (da.valuation() <= db.valuation()));
          if (va.abs() > vb.abs()) {
            Exponent la = hahn::log_derivative(a, spec, 8).valuation();
            Exponent lb = hahn::log_derivative(b, spec, 8).valuation();
            CHECK(la <= lb);
            CHECK((la == lb) == hahn::archimedean_equiv(va, vb));
          }
        }
        if (hahn::sign(a) > 0 && va < Exponent{}) CHECK(hahn::sign(da) > 0);
        Series m = mono(va, 1, c.spine);
        CHECK(derive(m, spec) * hahn::invert(m, 4) == hahn::monomial_log_derivative(va, spec));
      }
    }
  }
}
