#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "hahn/cli.hpp"

namespace testing {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

inline Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  int status = hahn::run_command(args, out, err);
  return {status, out.str(), err.str()};
}

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
};

inline std::vector<GoldenCase> golden_cases() {
  std::vector<GoldenCase> cases;
  auto add = [&](std::string field, const char* suffix, std::vector<std::string> args) {
    args.push_back("--field");
    args.push_back(field);
    cases.push_back({field + "_" + suffix, std::move(args)});
  };
  for (const std::string field : {"leh3", "logs"}) {
    add(field, "check", {"check"});
    add(field, "check_json", {"check", "--format", "json"});
    add(field, "derive", {"derive", "1/(1 - t1*t2^-1)", "--max-terms", "8"});
    add(field, "derive_json", {"derive", "t1 + t2^(1/2)*t3^-1", "--format", "json"});
    add(field, "ai", {"ai", "t1*t2^-1 + t3"});
    add(field, "integrate", {"integrate", "t2^2*t3", "--max-terms", "6"});
    add(field, "log", {"log", "t1^-2*(1 + t2)", "--max-terms", "6"});
    add(field, "exp", {"exp", "t2 - 2*t3^2", "--max-terms", "5"});
  }
  add("leh3", "ai_theta", {"ai", "t2*t3"});
  add("leh3", "log_missing", {"log", "t3"});
  add("logs", "exp_el", {"exp", "t0^-1 + t1", "--max-terms", "4"});
  add("logs", "integrate_el", {"integrate", "t^{t0^-2}", "--max-terms", "4", "--format", "json"});
  return cases;
}

inline std::string golden_text(const Outcome& o) {
  return "status: " + std::to_string(o.status) + "\n--- stdout\n" + o.out + "--- stderr\n" + o.err;
}

}  // namespace testing
