#include "odt/evaluation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "odt/error.hpp"

namespace odt {

PolicyEvaluation evaluate(const Instance& instance, const DecisionTree& tree) {
  PolicyEvaluation eval;
  eval.path_costs.resize(instance.num_hypotheses());
  std::vector<std::pair<double, double>> samples;
  samples.reserve(instance.num_hypotheses());

  for (int h = 0; h < instance.num_hypotheses(); ++h) {
    int v = tree.root;
    double cost = 0.0;
    while (!tree.nodes[v].is_leaf()) {
      const int query = tree.nodes[v].query;
      cost += instance.costs[query];
      const int next = tree.child(v, instance.response(query, h));
      if (next < 0)
        throw Error("TRACE-ERROR", "hypothesis '" + instance.hypothesis_ids[h] +
                                       "' has no branch for its response to query '" +
                                       instance.query_ids[query] + "'");
      v = next;
    }
    if (tree.nodes[v].hypothesis != h)
      throw Error("TRACE-ERROR", "hypothesis '" + instance.hypothesis_ids[h] +
                                     "' traces to a leaf labeled '" +
                                     instance.hypothesis_ids[tree.nodes[v].hypothesis] + "'");
    eval.path_costs[h] = cost;
    eval.expected_cost += instance.priors[h] * cost;
    samples.emplace_back(cost, instance.priors[h]);
  }
  eval.noncompletion = StepFunction::from_samples(std::move(samples));
  return eval;
}

NodeTiming timing(const Instance& instance, const DecisionTree& tree) {
  NodeTiming schedule;
  schedule.start.assign(tree.num_nodes(), 0.0);
  schedule.end.assign(tree.num_nodes(), 0.0);
  // Nodes are stored in preorder, so parents precede children.
  for (int v = 0; v < tree.num_nodes(); ++v) {
    const TreeNode& node = tree.nodes[v];
    if (node.is_leaf()) {
      schedule.end[v] = schedule.start[v];
      continue;
    }
    schedule.end[v] = schedule.start[v] + instance.costs[node.query];
    for (const auto& [response, child] : node.branches) schedule.start[child] = schedule.end[v];
  }
  return schedule;
}

std::vector<int> active_states(const DecisionTree& tree, const NodeTiming& timing, double t) {
  std::vector<int> result;
  for (int v = 0; v < tree.num_nodes(); ++v)
    if (timing.start[v] <= t && t <= timing.end[v]) result.push_back(v);
  return result;
}

std::vector<int> occupied_states(const DecisionTree& tree, const NodeTiming& timing, double t) {
  std::vector<int> result;
  for (int v = 0; v < tree.num_nodes(); ++v)
    if (timing.start[v] < t && t <= timing.end[v]) result.push_back(v);
  return result;
}

Certificate certify(const Instance& instance, const PolicyEvaluation& greedy_eval,
                    const PolicyEvaluation& exact_eval) {
  Certificate certificate;
  certificate.expected_greedy = greedy_eval.expected_cost;
  certificate.expected_opt = exact_eval.expected_cost;
  certificate.bound = 8.0 * (1.0 + std::log(static_cast<double>(instance.num_hypotheses())));
  if (certificate.expected_opt == 0.0) {
    certificate.ratio =
        certificate.expected_greedy == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    certificate.ratio = certificate.expected_greedy / certificate.expected_opt;
  }
  certificate.pass = certificate.ratio <= certificate.bound + 1e-9;
  return certificate;
}

std::vector<double> harmonic_path_sums(const Instance& instance, const DecisionTree& tree) {
  const auto spaces = node_version_spaces(instance, tree);
  std::vector<double> sums;
  // Iterative preorder walk carrying the partial sum down each path.
  std::vector<std::pair<int, double>> stack{{tree.root, 0.0}};
  while (!stack.empty()) {
    const auto [v, sum] = stack.back();
    stack.pop_back();
    if (tree.nodes[v].is_leaf()) {
      sums.push_back(sum);
      continue;
    }
    const double here = static_cast<double>(spaces[v].size());
    for (const auto& [response, child] : tree.nodes[v].branches) {
      const double below = static_cast<double>(spaces[child].size());
      stack.emplace_back(child, sum + (here - below) / (here - 1.0));
    }
  }
  return sums;
}

}  // namespace odt
