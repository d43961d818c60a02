#include <doctest.h>

#include "hahn/el_tower.hpp"
#include "hahn/errors.hpp"
#include "el_support.hpp"
#include "support.hpp"

using namespace testing;
using hahn::ELExponent;
using hahn::ELSeries;
using hahn::PreLogSpec;
using hahn::Tower;

TEST_SUITE("el_tower") {
  TEST_CASE("a tower needs a validated pre-logarithm") {
    CHECK_THROWS_AS(Tower::create(leh3_spec(), PreLogSpec::from_derivation(leh3_spec()),
                                  hahn::CoefficientHooks::rational()),
                    hahn::ConfigError);
    CHECK_THROWS_AS(Tower::create(logs_spec(), PreLogSpec::sigma_shift(),
                                  hahn::CoefficientHooks::rational()),
                    hahn::ConfigError);
    CHECK_NOTHROW(logs_tower());
  }

  TEST_CASE("exp and log of examples") {
    auto tower = logs_tower();
    const std::size_t budget = 8;

    // exp(log x) = x lands back at level 0.
    ELSeries x = exp_el(el(*tower, n(unit(1, -1))), *tower, budget);
    CHECK(x == el(*tower, x_power(1)));
    CHECK(hahn::level(x) == 0);

    // exp(x) needs a new level.
    ELSeries ex = exp_el(el(*tower, x_power(1)), *tower, budget);
    REQUIRE(ex.size() == 1);
    CHECK(ex.leading().exponent.level() == 1);
    CHECK(ex.leading().exponent.payload() == el(*tower, x_power(1)));
    CHECK(log_el(ex, *tower, budget) == el(*tower, x_power(1)));

    CHECK(exp_el(ELSeries{}, *tower, budget) == ELSeries::constant(1));
    CHECK(log_el(el(*tower, x_power(1)), *tower, budget) == el(*tower, n(unit(1, -1))));

    // exp(x + 1/x) = e^x (1 + 1/x + 1/(2x^2) + ...).
    ELSeries a = el(*tower, x_power(1) + x_power(-1));
    ELSeries e = exp_el(a, *tower, 3);
    ELSeries expected = ex * el(*tower, constant(1) + x_power(-1) + x_power(-2) * Rational(1, 2));
    CHECK(hahn::agree(e, expected));
    CHECK(e.cutoff().has_value());
  }

  TEST_CASE("exp and log reject what they cannot represent") {
    auto tower = logs_tower();
    CHECK_THROWS_AS(exp_el(ELSeries::constant(2), *tower, 4), hahn::DomainError);
    CHECK_THROWS_AS(log_el(ELSeries::constant(-1), *tower, 4), hahn::DomainError);
    CHECK_THROWS_AS(log_el(el(*tower, x_power(1) * Rational(3)), *tower, 4), hahn::DomainError);
    CHECK_THROWS_AS(exp_el(el(*tower, Series::big_o(unit(0, -1), naturals())), *tower, 4),
                    hahn::DomainError);
  }

  TEST_CASE("depth budget") {
    auto shallow = logs_tower(1);
    ELSeries ex = exp_el(el(*shallow, x_power(1)), *shallow, 4);
    CHECK_THROWS_AS(exp_el(ex, *shallow, 4), hahn::BudgetError);
    auto deep = logs_tower(2);
    ELSeries eex = exp_el(exp_el(el(*deep, x_power(1)), *deep, 4), *deep, 4);
    CHECK(eex.leading().exponent.level() == 2);
    CHECK(log_el(log_el(eex, *deep, 4), *deep, 4) == el(*deep, x_power(1)));
  }

  TEST_CASE("order of EL monomials") {
    auto tower = logs_tower();
    ELExponent ex = tower->from_log(el(*tower, x_power(1)));
    ELExponent x2 = tower->exponent(unit(0, -2));
    ELExponent ex2 = tower->from_log(el(*tower, x_power(2)));
    // e^{x^2} > e^x > x^2 > 1 as germs: exponents increase the other way.
    CHECK(ex2 < ex);
    CHECK(ex < x2);
    CHECK(x2 < ELExponent{});
    CHECK(-ex > ELExponent{});
    CHECK(ex + ex == tower->from_log(el(*tower, x_power(1) * Rational(2))));
    CHECK((ex - ex).is_zero());
    CHECK(ex + x2 < ex);
    CHECK(hahn::scale_exponent(ex, 3) == ex + ex + ex);
  }

  TEST_CASE("lift preserves order and values") {
    auto tower = logs_tower();
    Random rng(11);
    for (int i = 0; i < 100; ++i) {
      ELExponent a = tower->exponent(rng.exponent({0, 1, 2}, 2, 2));
      ELExponent b = tower->exponent(rng.exponent({0, 1, 2}, 2, 2));
      ELSeries s = ELSeries::from_terms({{a, 1}, {b, 2}}, naturals());
      ELSeries lifted = hahn::lift(s, 1);
      CHECK(lifted == s);
      for (const auto& t : lifted.terms()) CHECK((t.exponent.level() == 1 || t.exponent.is_zero()));
      if (a.is_zero() || b.is_zero()) continue;
      ELExponent la = hahn::lift(el_mono(a), 1).leading().exponent;
      ELExponent lb = hahn::lift(el_mono(b), 1).leading().exponent;
      CHECK((a < b) == (la < lb));
      CHECK((a == b) == (la == lb));
    }
    // t^{-1_0} lifts to exp(log x).
    ELSeries lifted = hahn::lift(el(*tower, x_power(1)), 1);
    CHECK(lifted.leading().exponent.payload() == el(*tower, n(unit(1, -1))));
  }

  TEST_CASE("derivatives of examples") {
    auto tower = logs_tower();
    ELSeries ex = exp_of(*tower, x_power(1));
    CHECK(derive_el(ex, *tower) == ex);
    // d(e^{x^2}) = 2x e^{x^2}.
    ELSeries ex2 = exp_of(*tower, x_power(2));
    CHECK(derive_el(ex2, *tower) == ex2 * el(*tower, x_power(1) * Rational(2)));
    // d(x^x) = d(e^{x log x}) = x^x (log x + 1).
    ELSeries xx = exp_of(*tower, n(unit(0, -1) + unit(1, -1)));
    CHECK(derive_el(xx, *tower) == xx * el(*tower, n(unit(1, -1)) + constant(1)));
  }

  TEST_CASE("derivation axioms on EL series") {
    auto tower = logs_tower();
    Random rng(23);
    int hd2_checked = 0;
    for (int i = 0; i < 200; ++i) {
      ELSeries a = random_el_series(*tower, rng);
      ELSeries b = random_el_series(*tower, rng);
      CHECK(derive_el(a * b, *tower) == derive_el(a, *tower) * b + a * derive_el(b, *tower));
      CHECK(derive_el(a + b, *tower) == derive_el(a, *tower) + derive_el(b, *tower));
      ELSeries da = derive_el(a, *tower);
      ELSeries db = derive_el(b, *tower);
      if (a.valuation().is_zero() || b.valuation().is_zero() || a.valuation() == b.valuation()) {
        continue;
      }
      // l'Hospital: v(a) < v(b) iff v(da) < v(db).
      CHECK((a.valuation() < b.valuation()) == (da.valuation() < db.valuation()));
      ++hd2_checked;
    }
    CHECK(hd2_checked > 100);
  }

  TEST_CASE("exp is a morphism and log inverts it") {
    auto tower = logs_tower();
    Random rng(31);
    for (int i = 0; i < 150; ++i) {
      ELSeries a = el(*tower, infinite_series(rng));
      ELSeries b = el(*tower, infinite_series(rng));
      ELSeries ea = exp_el(a, *tower, 8);
      ELSeries eb = exp_el(b, *tower, 8);
      CHECK(exp_el(a + b, *tower, 8) == ea * eb);
      CHECK(log_el(ea, *tower, 8) == a);
      // d(exp a) = exp(a)·da.
      CHECK(derive_el(ea, *tower) == ea * derive_el(a, *tower));
    }
  }

  TEST_CASE("integration of examples") {
    auto tower = logs_tower();
    ELSeries ex = exp_of(*tower, x_power(1));
    auto r = integrate_el(ex, *tower, 8);
    CHECK(r.status == hahn::IntegrationStatus::complete);
    CHECK(r.exact);
    CHECK(r.value == ex);

    auto inv = integrate_el(el(*tower, n(unit(0))), *tower, 8);
    CHECK(inv.exact);
    CHECK(inv.value == el(*tower, n(unit(1, -1))));

    // ∫ e^{x^2} = e^{x^2}(1/(2x) + 1/(4x^3) + ...) never terminates.
    ELSeries ex2 = exp_of(*tower, x_power(2));
    auto g = integrate_el(ex2, *tower, 8, 6);
    CHECK(g.status == hahn::IntegrationStatus::budget_exhausted);
    REQUIRE(g.value.size() >= 2);
    CHECK(g.value.leading().coefficient == Rational(1, 2));
    for (std::size_t k = 1; k < g.residual_valuations.size(); ++k) {
      CHECK(g.residual_valuations[k - 1] < g.residual_valuations[k]);
    }
  }

  TEST_CASE("integration round trip") {
    auto tower = logs_tower();
    Random rng(47);
    int complete = 0;
    for (int i = 0; i < 60; ++i) {
      ELSeries b = random_el_series(*tower, rng);
      b = b - ELSeries::constant(b.constant_term(), naturals());
      if (b.is_zero()) continue;
      ELSeries a = derive_el(b, *tower);
      auto r = integrate_el(a, *tower, 8, 16);
      if (r.status != hahn::IntegrationStatus::complete) continue;
      ++complete;
      CHECK(derive_el(r.value, *tower) == a);
    }
    CHECK(complete > 30);
  }
}

TEST_SUITE("el_tower") {
  TEST_CASE("log of positive EL series") {
    auto tower = logs_tower();
    Random rng(59);
    for (int i = 0; i < 60; ++i) {
      ELSeries a = random_el_series(*tower, rng);
      ELSeries b = random_el_series(*tower, rng);
      a = a * ELSeries::constant(1 / a.leading().coefficient);
      b = b * ELSeries::constant(1 / b.leading().coefficient);
      ELSeries la = log_el(a, *tower, 12);
      CHECK(hahn::agree(exp_el(la, *tower, 12), a));
      CHECK(hahn::agree(log_el(a * b, *tower, 12), la + log_el(b, *tower, 12)));
      // d(log a) = d(a)/a.
      CHECK(hahn::agree(derive_el(la, *tower), divide(derive_el(a, *tower), a, 12)));
    }
  }
}
