#pragma once

#include <string>

#include <json.hpp>

#include "hahn/el_tower.hpp"
#include "hahn/series.hpp"

namespace hahn {

using Json = nlohmann::ordered_json;

/// Text in the expression syntax, ascending monomials, e.g.
/// "1 - 1/2*t2^2 + t1*t2^-1 + O(t1^2)". EL monomials print as "t^{...}".
std::string render(const Series& a);
std::string render(const ELSeries& a);

/// The monomial t^α alone ("1" for α = 0).
std::string render_monomial(const Exponent& alpha);
std::string render_monomial(const ELExponent& e);

/// {"terms": [{"exponent", "numerator", "denominator"}], "exact", "cutoff"}.
/// Level-0 exponents are strings over the spine; higher levels are nested
/// {"level", "terms"} records.
Json to_json(const Series& a);
Json to_json(const ELSeries& a);
Json to_json(const Exponent& alpha, const Spine& spine);
Json to_json(const ELExponent& e, const Spine& spine);

}  // namespace hahn
