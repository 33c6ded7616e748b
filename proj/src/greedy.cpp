#include "odt/greedy.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "odt/error.hpp"
#include "odt/version_space.hpp"

namespace odt {

namespace {

bool within_tie(double value, double best) {
  return best - value <= kCriterionTieTolerance * std::max(std::fabs(best), std::fabs(value));
}

/// Picks the winning query at a state, or -1 when nothing splits it.
int select_query(const Instance& instance, const VersionSpace& vs, const Criterion& criterion) {
  std::vector<double> values(instance.num_queries());
  std::vector<bool> splits(instance.num_queries(), false);
  double best = 0.0;
  bool any = false;
  for (int e = 0; e < instance.num_queries(); ++e) {
    const Partition cells = partition(instance, vs, e);
    if (cells.part_count() < 2) continue;  // constant on vs: delta = 0, never chosen
    splits[e] = true;
    values[e] = criterion.score(summarize(cells), instance.costs[e]);
    if (!any || values[e] > best) best = values[e];
    any = true;
  }
  if (!any) return -1;
  for (int e = 0; e < instance.num_queries(); ++e)
    if (splits[e] && within_tie(values[e], best)) return e;
  return -1;
}

struct Builder {
  const Instance& instance;
  const Criterion& criterion;
  DecisionTree tree;

  int build(const VersionSpace& vs) {
    const int index = tree.num_nodes();
    tree.nodes.emplace_back();
    if (vs.size() == 1) {
      tree.nodes[index].hypothesis = vs.members.front();
      return index;
    }
    const int chosen = select_query(instance, vs, criterion);
    if (chosen < 0) {
      throw Error("STUCK", "no query splits the " + std::to_string(vs.size()) +
                               " surviving hypotheses (instance is infeasible)");
    }
    tree.nodes[index].query = chosen;
    for (const PartitionPart& part : partition(instance, vs, chosen).parts) {
      const int child = build(part.space);
      tree.nodes[index].branches.emplace_back(part.response, child);
    }
    return index;
  }
};

}  // namespace

DecisionTree greedy_solve(const Instance& instance, const Criterion& criterion) {
  if (criterion.binary_only && instance.max_alphabet_size() > 2)
    throw Error("ARITY-ERROR", "criterion '" + criterion.name +
                                   "' only accepts binary responses, instance has alphabet size " +
                                   std::to_string(instance.max_alphabet_size()));
  Builder builder{instance, criterion, {}};
  builder.tree.algorithm = "greedy";
  builder.tree.criterion = criterion.name;
  builder.tree.root = builder.build(full_space(instance));
  return builder.tree;
}

bool greedy_choices_optimal(const Instance& instance, const DecisionTree& tree) {
  const auto spaces = node_version_spaces(instance, tree);
  for (int v = 0; v < tree.num_nodes(); ++v) {
    if (tree.nodes[v].is_leaf()) continue;
    const VersionSpace vs = make_space(instance, spaces[v]);
    double best = 0.0;
    for (int e = 0; e < instance.num_queries(); ++e)
      best = std::max(best, delta(instance, vs, e) / instance.costs[e]);
    const double chosen = delta(instance, vs, tree.nodes[v].query) / instance.costs[tree.nodes[v].query];
    if (!within_tie(chosen, best)) return false;
  }
  return true;
}

}  // namespace odt
