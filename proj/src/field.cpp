#include "hahn/field.hpp"

#include <fstream>
#include <sstream>

#include "hahn/errors.hpp"

namespace hahn {

namespace {

constexpr std::string_view leh3_text = R"(# exp(-x), 1/x, 1/log(x)
[spine]
labels = 1 2 3

[logderiv]
1 = -1
2 = -t2
3 = -t2*t3

[prelog]
generator = from-derivation

[germs]
1 = exp 1
2 = power
3 = log 1

[hooks]
coefficients = rational
)";

constexpr std::string_view logs_text = R"(# t_n = 1/log_n(x), log_0(x) = x
[spine]
naturals = yes

[logderiv]
generator = right-shift
prefix = 1
window = 1
coefficient = -1

[prelog]
generator = from-derivation

[germs]
generator = log-iterates

[hooks]
coefficients = rational
)";

struct Entry {
  std::string key;
  std::string value;
  int line;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;

  const Entry* find(std::string_view key) const {
    for (const auto& e : entries) {
      if (e.key == key) return &e;
    }
    return nullptr;
  }
};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError("line " + std::to_string(line) + ": " + message);
}

std::vector<Section> parse_ini(std::string_view text) {
  std::vector<Section> sections;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw.substr(0, raw.find_first_of("#;")));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      sections.push_back({trim(std::string_view(s).substr(1, s.size() - 2)), line, {}});
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    if (sections.empty()) fail(line, "entry outside a section");
    sections.back().entries.push_back({trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line});
  }
  return sections;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

Rational rational(const Entry& e) {
  try {
    return parse_rational(e.value);
  } catch (const std::exception&) {
    fail(e.line, "'" + e.value + "' is not a rational number");
  }
}

std::int64_t label(const Entry& e) {
  try {
    std::size_t used = 0;
    auto v = std::stoll(e.key, &used);
    if (used != e.key.size()) throw std::invalid_argument("label");
    return v;
  } catch (const std::exception&) {
    fail(e.line, "unknown key '" + e.key + "'");
  }
}

Series series_value(const Entry& e, const std::shared_ptr<const Spine>& spine) {
  EvalContext context;
  context.spine = spine;
  try {
    return evaluate(parse_expression(e.value), context);
  } catch (const ParseError& error) {
    fail(e.line, error.what());
  }
}

std::shared_ptr<const Spine> load_spine(const Section& s) {
  if (const auto* e = s.find("naturals")) {
    if (e->value != "yes") fail(e->line, "naturals takes 'yes'");
    return std::make_shared<const Spine>(Spine::naturals());
  }
  if (const auto* e = s.find("labels")) {
    std::vector<SpineIndex> labels;
    for (const auto& w : words(e->value)) {
      try {
        labels.push_back(SpineIndex{std::stoll(w)});
      } catch (const std::exception&) {
        fail(e->line, "bad label '" + w + "'");
      }
    }
    return std::make_shared<const Spine>(Spine::finite(std::move(labels)));
  }
  fail(s.line, "[spine] needs labels or naturals");
}

DerivationSpec load_derivation(const Section& s, const std::shared_ptr<const Spine>& spine) {
  if (const auto* g = s.find("generator")) {
    if (spine->is_finite()) fail(g->line, "generators need the naturals");
    if (g->value == "log-iterates") return DerivationSpec::family({1, {1}, -1});
    if (g->value != "right-shift") fail(g->line, "unknown generator '" + g->value + "'");
    ShiftFamily family;
    for (const auto& e : s.entries) {
      if (e.key == "generator") continue;
      if (e.key == "prefix") {
        family.prefix = rational(e);
      } else if (e.key == "coefficient") {
        family.coefficient = rational(e);
      } else if (e.key == "window") {
        for (const auto& w : words(e.value)) family.window.push_back(rational({e.key, w, e.line}));
      } else {
        fail(e.line, "unknown key '" + e.key + "'");
      }
    }
    if (family.coefficient == 0) fail(s.line, "coefficient must be nonzero");
    return DerivationSpec::family(std::move(family));
  }
  if (!spine->is_finite()) fail(s.line, "the naturals need a generator");
  std::map<SpineIndex, Series> table;
  for (const auto& e : s.entries) table[SpineIndex{label(e)}] = series_value(e, spine);
  try {
    return DerivationSpec::table(spine, std::move(table));
  } catch (const ConfigError& error) {
    fail(s.line, error.what());
  }
}

PreLogSpec load_prelog(const Section& s, const DerivationSpec& derivation) {
  if (const auto* g = s.find("generator")) {
    if (g->value == "from-derivation") return PreLogSpec::from_derivation(derivation);
    if (g->value == "sigma-shift") {
      if (derivation.spine()->is_finite()) fail(g->line, "sigma-shift needs the naturals");
      Rational sign = 1;
      if (const auto* e = s.find("sign")) sign = rational(*e);
      if (sign != 1 && sign != -1) fail(g->line, "sign must be 1 or -1");
      return PreLogSpec::sigma_shift(sign);
    }
    fail(g->line, "unknown generator '" + g->value + "'");
  }
  std::map<SpineIndex, Series> table;
  for (const auto& e : s.entries) table[SpineIndex{label(e)}] = series_value(e, derivation.spine());
  return PreLogSpec::table(derivation.spine(), std::move(table));
}

GermKind germ_kind(const Entry& e) {
  auto w = words(e.value);
  try {
    if (w.size() == 1 && w[0] == "power") return GermKind::power();
    if (w.size() == 2 && w[0] == "exp") return GermKind::exp_iterate(std::stoi(w[1]));
    if (w.size() == 2 && w[0] == "log") return GermKind::log_iterate(std::stoi(w[1]));
  } catch (const std::exception&) {
  }
  fail(e.line, "germ must be 'power', 'exp K' or 'log K'");
}

GermMap load_germs(const Section& s) {
  if (const auto* g = s.find("generator")) {
    if (g->value != "log-iterates") fail(g->line, "unknown generator '" + g->value + "'");
    return GermMap::log_iterates();
  }
  std::map<SpineIndex, GermKind> kinds;
  for (const auto& e : s.entries) kinds[SpineIndex{label(e)}] = germ_kind(e);
  try {
    return GermMap::table(std::move(kinds));
  } catch (const ConfigError& error) {
    fail(s.line, error.what());
  }
}

}  // namespace

std::shared_ptr<const Tower> Field::tower(std::size_t depth) const {
  if (!prelog) return nullptr;
  try {
    return Tower::create(*derivation, *prelog, hooks, depth);
  } catch (const ConfigError&) {
    return nullptr;
  }
}

EvalContext Field::context(std::size_t max_terms, std::size_t depth) const {
  EvalContext c;
  c.spine = spine();
  c.derivation = derivation.get();
  c.prelog = prelog.get();
  c.hooks = hooks;
  c.tower = tower(depth);
  c.max_terms = max_terms;
  return c;
}

Field parse_field(std::string_view text, std::string name) {
  auto sections = parse_ini(text);
  auto find = [&](std::string_view n) -> const Section* {
    const Section* found = nullptr;
    for (const auto& s : sections) {
      if (s.name == n) {
        if (found) fail(s.line, "duplicate section [" + s.name + "]");
        found = &s;
      }
    }
    return found;
  };
  for (const auto& s : sections) {
    if (s.name != "spine" && s.name != "logderiv" && s.name != "prelog" && s.name != "germs" &&
        s.name != "hooks") {
      fail(s.line, "unknown section [" + s.name + "]");
    }
  }
  const Section* spine_section = find("spine");
  const Section* logderiv = find("logderiv");
  if (!spine_section) throw ConfigError("missing [spine] section");
  if (!logderiv) throw ConfigError("missing [logderiv] section");

  Field field;
  field.name = std::move(name);
  auto spine = load_spine(*spine_section);
  field.derivation = std::make_shared<const DerivationSpec>(load_derivation(*logderiv, spine));
  if (const auto* s = find("hooks")) {
    for (const auto& e : s->entries) {
      if (e.key != "coefficients") fail(e.line, "unknown key '" + e.key + "'");
      if (e.value == "rational") {
        field.hooks = CoefficientHooks::rational();
      } else if (e.value == "float") {
        field.hooks = CoefficientHooks::floating();
      } else {
        fail(e.line, "coefficients must be rational or float");
      }
    }
  }
  if (const auto* s = find("prelog")) {
    field.prelog = std::make_shared<const PreLogSpec>(load_prelog(*s, *field.derivation));
  }
  if (const auto* s = find("germs")) field.germs = load_germs(*s);
  return field;
}

std::optional<std::string_view> builtin_field(std::string_view name) {
  if (name == "leh3") return leh3_text;
  if (name == "logs") return logs_text;
  return std::nullopt;
}

Field load_field(const std::string& name_or_path) {
  if (auto text = builtin_field(name_or_path)) return parse_field(*text, name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw ConfigError("no built-in field or readable file named '" + name_or_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_field(buffer.str(), name_or_path);
}

}  // namespace hahn
