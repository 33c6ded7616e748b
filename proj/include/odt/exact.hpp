#ifndef ODT_EXACT_HPP
#define ODT_EXACT_HPP

#include <cstdint>

#include "odt/instance.hpp"
#include "odt/tree.hpp"

namespace odt {

inline constexpr std::uint64_t kDefaultStateBudget = 2'000'000;

/// Counters from one exact solve.
struct ExactStats {
  std::uint64_t states_expanded = 0;  // distinct version spaces evaluated
  std::uint64_t cache_hits = 0;       // memo lookups that skipped a recursion
};

struct ExactResult {
  DecisionTree tree;
  double expected_cost = 0.0;
  ExactStats stats;
};

/// Minimum expected identification cost by memoized dynamic programming over
/// version spaces (bitmask-keyed, so m <= 64). Recurrence on unnormalized
/// costs: cost'(V) = min over splitting queries e of c(e) * p(V) + sum_i
/// cost'(S_i), singletons cost 0; the reported optimum is cost'(H) / p(H).
/// Ties go to the smallest query index.
///
/// Throws Error("BUDGET-EXCEEDED") past `state_budget` expansions,
/// Error("INFEASIBLE") when some reachable version space has no splitting
/// query, Error("SIZE-EXCEEDED") for m > 64.
ExactResult exact_solve(const Instance& instance, std::uint64_t state_budget = kDefaultStateBudget);

/// Independent cross-check for exact_solve: exhaustively recurses over every
/// query choice at every reachable version space, no memoization, using the
/// normalized recurrence cost(V) = min_e c(e) + sum_i (p(S_i)/p(V)) cost(S_i).
/// Hard-capped at m <= 5 and n <= 5 (Error("SIZE-EXCEEDED") above).
double enumerate_optimum(const Instance& instance);

}  // namespace odt

#endif  // ODT_EXACT_HPP
