#pragma once

#include <cstddef>
#include <memory>

#include "hahn/derivation.hpp"
#include "hahn/el_tower.hpp"
#include "hahn/expression.hpp"
#include "hahn/integration.hpp"
#include "hahn/logarithm.hpp"

namespace hahn {

/// What an expression may use. Without a derivation the calls d, ai and int
/// are rejected; without a pre-logarithm so is log; t^{...} needs a tower.
struct EvalContext {
  std::shared_ptr<const Spine> spine;
  const DerivationSpec* derivation = nullptr;
  const PreLogSpec* prelog = nullptr;
  CoefficientHooks hooks = CoefficientHooks::rational();
  std::shared_ptr<const Tower> tower;
  std::size_t max_terms = 32;
};

/// Division, fractional powers and the transcendental calls truncate at
/// max_terms; the result's exact flag records it.
Series evaluate(const Expr& e, const EvalContext& context);
ELSeries evaluate_el(const Expr& e, const EvalContext& context);

/// The integral value with the unknown remainder made explicit: when the
/// budget ran out, the error term sits at the asymptotic integral of the
/// residual.
Series bounded_integral(const IntegrationResult& r, const DerivationSpec& spec);
ELSeries bounded_integral(const ELIntegrationResult& r, const Tower& tower, std::size_t max_terms);

}  // namespace hahn
