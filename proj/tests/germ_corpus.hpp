#pragma once

#include <vector>

#include "support.hpp"

namespace testing {

/// Σ_{n<count} t1^{n+1} t2^{-n}, the expansion of 1/(exp x - x).
inline Series inverse_exp_minus_x(int count) {
  std::vector<hahn::Term<Exponent>> terms;
  for (int n = 0; n < count; ++n) terms.push_back({e3(n + 1, -n, 0), 1});
  return Series::from_terms(std::move(terms), rank3());
}

struct GermItem {
  Series a;
  double x;
};

/// Thirty derivative checks over leh3 at x = 10, 20, 50.
inline std::vector<GermItem> leh3_germ_corpus() {
  std::vector<Series> series = {
      mono(e3(1, 0, 0)),
      mono(e3(0, 1, 0)),
      mono(e3(0, 0, 1)),
      mono(e3(0, -1, -1)),
      constant(1) + mono(e3(1, -1, 0)),
      inverse_exp_minus_x(8),
      mono(e3(0, Rational(1, 2), -2)),
      mono(e3(2, 0, 3)) - mono(e3(0, 3, 0)),
      mono(e3(0, 0, Rational(-1, 2))) + mono(e3(0, 1, 1)),
      mono(e3(0, -2, 0)) - mono(e3(0, -1, 1), 3) + mono(e3(1, 0, 0)),
  };
  std::vector<GermItem> items;
  for (double x : {10.0, 20.0, 50.0}) {
    for (const auto& s : series) items.push_back({s.with_spine(rank3()), x});
  }
  return items;
}

}  // namespace testing
