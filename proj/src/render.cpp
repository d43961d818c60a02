#include "hahn/render.hpp"

namespace hahn {

namespace {

std::string power_text(const Rational& q) {
  if (q == 1) return "";
  if (q.get_den() == 1) return "^" + to_string(q);
  return "^(" + to_string(q) + ")";
}

template <class S>
std::string render_terms(const S& a) {
  std::string out;
  for (const auto& t : a.terms()) {
    const Rational& c = t.coefficient;
    Rational magnitude = abs(c);
    std::string m = render_monomial(t.exponent);
    std::string body;
    if (m == "1") {
      body = to_string(magnitude);
    } else if (magnitude == 1) {
      body = m;
    } else {
      body = to_string(magnitude) + "*" + m;
    }
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + body;
    } else {
      out += (c < 0 ? " - " : " + ") + body;
    }
  }
  if (a.cutoff()) {
    std::string o = "O(" + render_monomial(*a.cutoff()) + ")";
    out = out.empty() ? o : out + " + " + o;
  }
  return out.empty() ? "0" : out;
}

const Spine& spine_of(const std::shared_ptr<const Spine>& spine) {
  static const Spine naturals = Spine::naturals();
  return spine ? *spine : naturals;
}

template <class S>
Json series_json(const S& a) {
  const Spine& spine = spine_of(a.spine());
  Json terms = Json::array();
  for (const auto& t : a.terms()) {
    Json term;
    term["exponent"] = to_json(t.exponent, spine);
    term["numerator"] = t.coefficient.get_num().get_str();
    term["denominator"] = t.coefficient.get_den().get_str();
    terms.push_back(std::move(term));
  }
  Json out;
  out["terms"] = std::move(terms);
  out["exact"] = a.exact();
  out["cutoff"] = a.cutoff() ? to_json(*a.cutoff(), spine) : Json(nullptr);
  return out;
}

}  // namespace

std::string render_monomial(const Exponent& alpha) {
  if (alpha.is_zero()) return "1";
  std::string out;
  for (const auto& [index, q] : alpha.entries()) {
    if (!out.empty()) out += "*";
    out += "t" + to_string(index) + power_text(q);
  }
  return out;
}

std::string render_monomial(const ELExponent& e) {
  if (e.level() == 0) return render_monomial(e.base());
  return "t^{" + render(e.payload()) + "}";
}

std::string render(const Series& a) { return render_terms(a); }
std::string render(const ELSeries& a) { return render_terms(a); }

Json to_json(const Exponent& alpha, const Spine& spine) { return to_string(alpha, spine); }

Json to_json(const ELExponent& e, const Spine& spine) {
  if (e.level() == 0) return to_json(e.base(), spine);
  Json out;
  out["level"] = e.level();
  out["terms"] = series_json(e.payload())["terms"];
  return out;
}

Json to_json(const Series& a) { return series_json(a); }
Json to_json(const ELSeries& a) { return series_json(a); }

}  // namespace hahn
