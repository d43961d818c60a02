#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "hahn/derivation.hpp"
#include "hahn/el_tower.hpp"
#include "hahn/evaluate.hpp"
#include "hahn/germ.hpp"
#include "hahn/logarithm.hpp"

namespace hahn {

/// A field configuration: spine, derivation, and the optional pre-logarithm,
/// germ interpretation and coefficient hooks.
///
///   [spine]     labels = 1 2 3          or   naturals = yes
///   [logderiv]  1 = -1 ...              or   generator = right-shift
///                                            prefix = 1, window = 1, coefficient = -1
///   [prelog]    1 = -t2^-1 ...          or   generator = from-derivation | sigma-shift
///                                            (sigma-shift takes sign = ±1)
///   [germs]     1 = exp 1, 2 = power, 3 = log 1   or   generator = log-iterates
///   [hooks]     coefficients = rational | float
struct Field {
  std::string name;
  std::shared_ptr<const DerivationSpec> derivation;
  std::shared_ptr<const PreLogSpec> prelog;
  std::optional<GermMap> germs;
  CoefficientHooks hooks = CoefficientHooks::rational();

  const std::shared_ptr<const Spine>& spine() const { return derivation->spine(); }
  /// The EL tower over the field, or null when the pre-logarithm fails
  /// validation (or is absent).
  std::shared_ptr<const Tower> tower(std::size_t depth) const;
  EvalContext context(std::size_t max_terms, std::size_t depth) const;
};

/// Throws ConfigError (with the line for syntax problems).
Field parse_field(std::string_view text, std::string name);

/// "leh3", "logs", or a path to a configuration file.
Field load_field(const std::string& name_or_path);

/// Text of a built-in configuration, or nullopt.
std::optional<std::string_view> builtin_field(std::string_view name);

}  // namespace hahn
