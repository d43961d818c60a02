#include "hahn/exponent.hpp"

#include <algorithm>
#include <stdexcept>

#include "hahn/errors.hpp"

namespace hahn {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t scale = s.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+") {
    throw std::invalid_argument("malformed decimal: " + s);
  }
  mpz_class numerator;
  if (numerator.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0) {
    throw std::invalid_argument("malformed decimal: " + s);
  }
  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), 10, scale);
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

Spine Spine::finite(std::vector<SpineIndex> labels) {
  if (labels.empty()) throw ConfigError("a finite spine needs at least one label");
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (!(labels[i - 1] < labels[i])) {
      throw ConfigError("finite spine labels must be strictly increasing");
    }
  }
  return Spine(Kind::finite, std::move(labels));
}

Spine Spine::naturals() { return Spine(Kind::naturals, {}); }

bool Spine::contains(SpineIndex i) const {
  if (kind_ == Kind::naturals) return i.value >= 0;
  return std::binary_search(labels_.begin(), labels_.end(), i);
}

bool Spine::contains(const Exponent& e) const {
  return std::all_of(e.entries().begin(), e.entries().end(),
                     [this](const Exponent::Entry& x) { return contains(x.first); });
}

void Spine::require(const Exponent& e) const {
  for (const auto& [index, coefficient] : e.entries()) {
    if (!contains(index)) {
      throw ConfigError("spine label " + to_string(index) + " is not in the spine");
    }
  }
}

std::optional<SpineIndex> Spine::right_shift(SpineIndex i) const {
  if (kind_ != Kind::naturals || i.value < 0) return std::nullopt;
  return SpineIndex{i.value + 1};
}

Exponent::Exponent(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& entry : entries) {
    if (!entries_.empty() && entries_.back().first == entry.first) {
      entries_.back().second += entry.second;
    } else {
      entries_.push_back(std::move(entry));
    }
  }
  std::erase_if(entries_, [](const Entry& x) { return x.second == 0; });
}

Exponent Exponent::unit(SpineIndex i, const Rational& coefficient) {
  Exponent e;
  if (coefficient != 0) e.entries_.emplace_back(i, coefficient);
  return e;
}

Rational Exponent::coefficient(SpineIndex i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& x, SpineIndex j) { return x.first < j; });
  if (it != entries_.end() && it->first == i) return it->second;
  return 0;
}

std::optional<SpineIndex> Exponent::v_gamma() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.front().first;
}

Rational Exponent::leading_coefficient() const {
  return entries_.empty() ? Rational(0) : entries_.front().second;
}

std::optional<SpineIndex> Exponent::max_index() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.back().first;
}

int Exponent::sign() const { return entries_.empty() ? 0 : sgn(entries_.front().second); }

Exponent Exponent::operator-() const {
  Exponent r = *this;
  for (auto& entry : r.entries_) entry.second = -entry.second;
  return r;
}

namespace {

// Merge two sorted entry lists with b scaled by `factor`.
std::vector<Exponent::Entry> merge(std::span<const Exponent::Entry> a,
                                   std::span<const Exponent::Entry> b, int factor) {
  std::vector<Exponent::Entry> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, factor * b[j].second);
      ++j;
    } else {
      Rational sum = a[i].second + factor * b[j].second;
      if (sum != 0) out.emplace_back(a[i].first, std::move(sum));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Exponent& Exponent::operator+=(const Exponent& other) {
  entries_ = merge(entries_, other.entries_, 1);
  return *this;
}

Exponent& Exponent::operator-=(const Exponent& other) {
  entries_ = merge(entries_, other.entries_, -1);
  return *this;
}

Exponent& Exponent::operator*=(const Rational& factor) {
  if (factor == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& entry : entries_) entry.second *= factor;
  return *this;
}

std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& x = a.entries_;
  const auto& y = b.entries_;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      return sgn(x[i].second) > 0 ? std::strong_ordering::greater
                                  : std::strong_ordering::less;
    }
    if (i == x.size() || y[j].first < x[i].first) {
      return sgn(y[j].second) > 0 ? std::strong_ordering::less
                                  : std::strong_ordering::greater;
    }
    int c = cmp(x[i].second, y[j].second);
    if (c != 0) return c > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
    ++i;
    ++j;
  }
  return std::strong_ordering::equal;
}

bool operator==(const Exponent& a, const Exponent& b) { return a.entries_ == b.entries_; }

std::strong_ordering compare_exponents(const Spine& spine, const Exponent& a,
                                       const Exponent& b) {
  spine.require(a);
  spine.require(b);
  return a <=> b;
}

std::string to_string(const Exponent& e, const Spine& spine) {
  std::string out;
  if (spine.is_finite()) {
    out = "(";
    bool first = true;
    for (auto i : spine.labels()) {
      if (!first) out += ",";
      first = false;
      out += to_string(e.coefficient(i));
    }
    return out + ")";
  }
  out = "{";
  bool first = true;
  for (const auto& [index, q] : e.entries()) {
    if (!first) out += ", ";
    first = false;
    out += to_string(index) + ":" + to_string(q);
  }
  return out + "}";
}

bool archimedean_equiv(const Exponent& a, const Exponent& b) {
  return a.v_gamma() == b.v_gamma();
}

}  // namespace hahn
