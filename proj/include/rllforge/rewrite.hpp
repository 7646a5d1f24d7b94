#pragma once
// Worklist reduction of noncommutative polynomials to normal form under a
// RuleSet. Site selection is deterministic (leftmost) or seeded-random; both
// must reach the same normal form on confluent inputs.

#include <cstdint>

#include "rllforge/ncpoly.hpp"
#include "rllforge/ruleset.hpp"

namespace rllf {

enum class ReduceStrategy { Deterministic, SeededRandom };

struct ReduceOptions {
  ReduceStrategy strategy = ReduceStrategy::Deterministic;
  std::uint64_t seed = 0;      // used by SeededRandom
  long budget = 100000;        // max rewrite steps before NonTerminationError
  double prune_rel = 1e-14;    // relative coefficient pruning threshold
};

struct ReduceStats {
  long steps = 0;          // rule applications performed
  double max_coeff = 0.0;  // largest |coefficient| seen at any stage
};

// Rewrites until no rule applies; throws NonTerminationError with the
// offending word if the step budget is exhausted.
NCPoly normal_order(const NCPoly& p, const RuleSet& rules,
                    const ReduceOptions& opt = {},
                    ReduceStats* stats = nullptr);

// Relative size of a reduced polynomial: max leftover |coefficient| over
// max(1, largest intermediate |coefficient|).
double reduction_residual(const NCPoly& p, const RuleSet& rules,
                          const ReduceOptions& opt = {},
                          NCPoly* normal_form = nullptr);

}  // namespace rllf
