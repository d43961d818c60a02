#include "hahn/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <optional>

#include <CLI11.hpp>

#include "hahn/errors.hpp"
#include "hahn/evaluate.hpp"
#include "hahn/field.hpp"
#include "hahn/germ.hpp"
#include "hahn/integration.hpp"
#include "hahn/render.hpp"

namespace hahn {

namespace {

struct Options {
  std::string command;
  std::string field = "leh3";
  std::size_t max_terms = 32;
  std::size_t depth = 3;
  std::string format = "text";
  std::string expression;
  double at = 0;
  std::optional<double> step;
};

std::string number(double x) {
  char buffer[64];
  auto r = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, r.ptr);
}

std::string labels(const std::vector<SpineIndex>& indices) {
  std::string out;
  for (auto i : indices) out += (out.empty() ? "t" : " t") + to_string(i);
  return out;
}

Json label_json(const std::vector<SpineIndex>& indices) {
  Json out = Json::array();
  for (auto i : indices) out.push_back(i.value);
  return out;
}

const char* ok(bool flag) { return flag ? "ok" : "FAIL"; }

int check(const Field& field, const Options& o, std::ostream& out) {
  const auto& spine = *field.spine();
  HardyReport hardy = validate_hardy(*field.derivation);
  std::optional<PrelogReport> prelog;
  if (field.prelog) prelog = validate_prelog(*field.derivation, *field.prelog);
  auto tower = field.tower(o.depth);
  std::string theta = hardy.theta_tilde ? to_string(*hardy.theta_tilde, spine) : "not attained";

  if (o.format == "json") {
    Json j;
    j["field"] = field.name;
    j["h3"] = hardy.h3_ok;
    j["h_field"] = hardy.hfield_ok;
    j["c1c2"] = hardy.c1c2_ok;
    j["theta_tilde"] = hardy.theta_tilde ? Json(theta) : Json(nullptr);
    Json violations = Json::array();
    for (const auto& v : hardy.violations) {
      violations.push_back({{"first", v.first.value}, {"second", v.second.value}, {"reason", v.reason}});
    }
    j["violations"] = std::move(violations);
    if (prelog) {
      Json p;
      p["condition1"] = prelog->condition1;
      p["condition1_witnesses"] = label_json(prelog->condition1_witnesses);
      p["condition2"] = prelog->condition2;
      p["condition2_witnesses"] = label_json(prelog->condition2_witnesses);
      p["compatible"] = prelog->compatible;
      p["incompatible"] = label_json(prelog->incompatible);
      p["growth"] = prelog->growth;
      p["growth_witnesses"] = label_json(prelog->growth_witnesses);
      p["missing"] = label_json(prelog->missing);
      p["ok"] = prelog->ok();
      j["prelog"] = std::move(p);
    } else {
      j["prelog"] = nullptr;
    }
    j["el_tower"] = tower != nullptr;
    out << j.dump(2) << "\n";
    return 0;
  }

  out << "field: " << field.name << "\n";
  out << "H3: " << ok(hardy.h3_ok) << "\n";
  out << "H-field: " << ok(hardy.hfield_ok) << "\n";
  out << "C1/C2: " << ok(hardy.c1c2_ok) << "\n";
  out << "theta~: " << theta << "\n";
  for (const auto& v : hardy.violations) {
    out << "violation t" << v.first.value << ", t" << v.second.value << ": " << v.reason << "\n";
  }
  if (!prelog) {
    out << "prelog: none\n";
  } else {
    auto witnessed = [&](bool flag, const std::vector<SpineIndex>& w) {
      std::string s = ok(flag);
      if (!w.empty()) s += " (" + labels(w) + ")";
      return s;
    };
    out << "prelog condition 1: " << witnessed(prelog->condition1, prelog->condition1_witnesses) << "\n";
    out << "prelog condition 2: " << witnessed(prelog->condition2, prelog->condition2_witnesses) << "\n";
    out << "prelog compatible: " << witnessed(prelog->compatible, prelog->incompatible) << "\n";
    out << "prelog growth: " << witnessed(prelog->growth, prelog->growth_witnesses) << "\n";
    out << "prelog missing: " << (prelog->missing.empty() ? "none" : labels(prelog->missing)) << "\n";
  }
  out << "EL tower: " << (tower ? "available" : "unavailable") << "\n";
  return 0;
}

template <class S>
class Runner {
 public:
  Runner(const Field& field, const EvalContext& context, const Options& o, std::ostream& out)
      : field_(field), c_(context), o_(o), out_(out) {}

  int run(const Expr& e) {
    S a = eval(e);
    const std::string& cmd = o_.command;
    if (cmd == "derive") return emit(a, d(a));
    if (cmd == "logderiv") {
      if (a.no_known_terms()) throw DomainError("logarithmic derivative of zero");
      return emit(a, divide(d(a), a, c_.max_terms));
    }
    if (cmd == "ai") return emit(a, call("ai", e));
    if (cmd == "log") return emit(a, call("log", e));
    if (cmd == "exp") return emit(a, call("exp", e));
    if (cmd == "integrate") return integrate_command(a);
    if (cmd == "eval") return eval_command(a);
    if (cmd == "germ-check") return germ_check(a);
    throw ConfigError("unknown command " + cmd);
  }

 private:
  S eval(const Expr& e) const {
    if constexpr (std::is_same_v<S, Series>) {
      return evaluate(e, c_);
    } else {
      return evaluate_el(e, c_);
    }
  }

  S d(const S& a) const {
    if constexpr (std::is_same_v<S, Series>) {
      return derive(a, *c_.derivation);
    } else {
      return derive_el(a, *c_.tower);
    }
  }

  S call(const std::string& name, const Expr& e) const { return eval(Expr::call(name, e)); }

  Json header(const S& a) const {
    Json j;
    j["field"] = field_.name;
    j["command"] = o_.command;
    j["input"] = render(a);
    return j;
  }

  int emit(const S& a, const S& result) {
    if (o_.format == "json") {
      Json j = header(a);
      j["result"] = to_json(result);
      out_ << j.dump(2) << "\n";
    } else {
      out_ << render(result) << "\n";
      out_ << "exact: " << (result.exact() ? "yes" : "no") << "\n";
    }
    return 0;
  }

  int integrate_command(const S& a) {
    auto r = [&] {
      if constexpr (std::is_same_v<S, Series>) {
        return hahn::integrate(a, *c_.derivation, c_.max_terms, c_.max_terms);
      } else {
        return integrate_el(a, *c_.tower, c_.max_terms, c_.max_terms);
      }
    }();
    if (o_.format == "json") {
      Json j = header(a);
      j["result"] = to_json(value(r));
      j["status"] = to_string(r.status);
      j["iterations"] = r.iterations;
      j["residual"] = to_json(r.residual);
      out_ << j.dump(2) << "\n";
    } else {
      out_ << render(value(r)) << "\n";
      out_ << "exact: " << (r.exact ? "yes" : "no") << "\n";
      out_ << "status: " << to_string(r.status) << "\n";
      out_ << "iterations: " << r.iterations << "\n";
      if (!r.residual.is_zero()) out_ << "residual: " << render(r.residual) << "\n";
    }
    return r.status == IntegrationStatus::non_integrable ? 1 : 0;
  }

  template <class Result>
  S value(const Result& r) const {
    if constexpr (std::is_same_v<S, Series>) {
      return bounded_integral(r, *c_.derivation);
    } else {
      return bounded_integral(r, *c_.tower, c_.max_terms);
    }
  }

  const GermMap& germs() const {
    if (!field_.germs) throw ConfigError("field " + field_.name + " has no [germs] section");
    return *field_.germs;
  }

  int eval_command(const S& a) {
    double value = eval_series(a, germs(), o_.at);
    if (o_.format == "json") {
      Json j = header(a);
      j["at"] = o_.at;
      j["value"] = value;
      out_ << j.dump(2) << "\n";
    } else {
      out_ << number(value) << "\n";
    }
    return 0;
  }

  int germ_check(const S& a) {
    double h = o_.step ? *o_.step : default_step(o_.at);
    DerivativeReport r;
    if constexpr (std::is_same_v<S, Series>) {
      r = numeric_derivative_check(a, *c_.derivation, germs(), o_.at, h);
    } else {
      r = numeric_derivative_check(a, *c_.tower, germs(), o_.at, h);
    }
    if (o_.format == "json") {
      Json j;
      j["symbolic"] = r.symbolic;
      j["numeric"] = r.numeric;
      j["rel_err"] = r.rel_err;
      out_ << j.dump(2) << "\n";
    } else {
      out_ << "symbolic: " << number(r.symbolic) << "\n";
      out_ << "numeric: " << number(r.numeric) << "\n";
      out_ << "rel_err: " << number(r.rel_err) << "\n";
    }
    return 0;
  }

  const Field& field_;
  const EvalContext& c_;
  const Options& o_;
  std::ostream& out_;
};

int execute(const Options& o, std::ostream& out) {
  Field field = load_field(o.field);
  if (o.command == "check") return check(field, o, out);
  Expr e = parse_expression(o.expression);
  EvalContext context = field.context(o.max_terms, o.depth);
  if (context.tower) return Runner<ELSeries>(field, context, o, out).run(e);
  return Runner<Series>(field, context, o, out).run(e);
}

std::size_t default_max_terms() {
  if (const char* env = std::getenv("HAHNFIELD_MAX_TERMS")) {
    std::size_t n = 0;
    std::string_view s(env);
    auto r = std::from_chars(s.data(), s.data() + s.size(), n);
    if (r.ec == std::errc() && r.ptr == s.data() + s.size() && n > 0) return n;
  }
  return 32;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.max_terms = default_max_terms();

  CLI::App app{"Arithmetic, derivations, logarithms and integration in Hahn-series fields",
               "hahnfield"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--field", o.field, "Built-in field (leh3, logs) or configuration file")
      ->capture_default_str();
  app.add_option("--max-terms", o.max_terms, "Term budget for truncated operations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--depth", o.depth, "Depth budget of the exponential tower")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  app.add_subcommand("check", "Validate the derivation and pre-logarithm");
  const std::pair<const char*, const char*> unary[] = {
      {"derive", "Derivative d(a)"},
      {"logderiv", "Logarithmic derivative d(a)/a"},
      {"ai", "Monomial asymptotic integral of the leading term"},
      {"integrate", "Integral by iterated asymptotic integration"},
      {"log", "Logarithm"},
      {"exp", "Exponential"},
  };
  for (const auto& [name, help] : unary) {
    app.add_subcommand(name, help)->add_option("expression", o.expression)->required();
  }
  auto* eval = app.add_subcommand("eval", "Evaluate the series as a germ at x");
  eval->add_option("expression", o.expression)->required();
  eval->add_option("--at", o.at, "Evaluation point")->required();
  auto* germ = app.add_subcommand("germ-check", "Compare d(a) with a finite difference at x");
  germ->add_option("expression", o.expression)->required();
  germ->add_option("--at", o.at, "Evaluation point")->required();
  germ->add_option("--step", o.step, "Central-difference step")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  o.command = app.get_subcommands().front()->get_name();

  try {
    return execute(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hahn
