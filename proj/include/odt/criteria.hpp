#ifndef ODT_CRITERIA_HPP
#define ODT_CRITERIA_HPP

#include <string>
#include <vector>

#include "odt/version_space.hpp"

namespace odt {

/// The part of a Partition a split criterion is allowed to look at: realized
/// part cardinalities, conditional response probabilities and the parent
/// size. One partition pass per (node, query) feeds every criterion.
struct SplitSummary {
  std::vector<int> part_sizes;        // |S_i|
  std::vector<double> conditionals;   // s_i, sums to 1
  int parent_size = 0;                // |V|

  int part_count() const { return static_cast<int>(part_sizes.size()); }
};

SplitSummary summarize(const Partition& partition);

/// A pluggable greedy split criterion: a pure deterministic function of the
/// split summary and the query cost. Binary-only criteria reject summaries
/// with more than two parts (Error("ARITY-ERROR")).
struct Criterion {
  std::string name;
  std::string description;
  bool binary_only = false;
  bool cost_scaled = false;   // whether the formula divides by the query cost
  bool experimental = false;
  double (*eval)(const SplitSummary&, double cost) = nullptr;

  double score(const SplitSummary& summary, double cost) const;
};

/// All built-in criteria. The first entry, "delta-over-cost", is the solver
/// default: expected newly eliminated hypotheses per unit cost.
const std::vector<Criterion>& criterion_catalog();

const Criterion& default_criterion();

/// Looks a criterion up by name; throws Error("UNKNOWN-CRITERION").
const Criterion& find_criterion(const std::string& name);

}  // namespace odt

#endif  // ODT_CRITERIA_HPP
