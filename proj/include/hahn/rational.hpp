#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hahn {

/// Exact arbitrary-precision rational; the coefficient field and the ribs.
using Rational = mpq_class;

/// Parses "p", "p/q", or a finite decimal such as "-0.25"; throws
/// std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace hahn
