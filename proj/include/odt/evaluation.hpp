#ifndef ODT_EVALUATION_HPP
#define ODT_EVALUATION_HPP

#include <vector>

#include "odt/instance.hpp"
#include "odt/step_function.hpp"
#include "odt/tree.hpp"

namespace odt {

/// Everything measurable about one policy on one instance.
struct PolicyEvaluation {
  std::vector<double> path_costs;  // per hypothesis: total query cost to its leaf
  double expected_cost = 0.0;      // prior-weighted sum of path costs
  StepFunction noncompletion;      // t -> Pr[identification cost >= t]
};

/// Traces every hypothesis through the tree. Throws Error("TRACE-ERROR")
/// when a hypothesis reaches a node with no branch for its response or ends
/// at a leaf labeled with a different hypothesis (tree/instance mismatch).
PolicyEvaluation evaluate(const Instance& instance, const DecisionTree& tree);

/// Node schedule under the cost-as-time reading: a node starts when the
/// queries above it have been paid for and ends when its own query completes.
struct NodeTiming {
  std::vector<double> start;
  std::vector<double> end;  // equals start for leaves
};

NodeTiming timing(const Instance& instance, const DecisionTree& tree);

/// Nodes whose closed interval [start, end] contains t. At a boundary both
/// the finishing node and its children are listed.
std::vector<int> active_states(const DecisionTree& tree, const NodeTiming& timing, double t);

/// Nodes occupied during (t - dt, t]: membership is start < t <= end, so for
/// every t > 0 each still-running hypothesis lies in exactly one listed node
/// and the version-space masses of the listed nodes add up to
/// noncompletion(t). Leaves never qualify (their interval is a point).
std::vector<int> occupied_states(const DecisionTree& tree, const NodeTiming& timing, double t);

/// Outcome of comparing a greedy policy against the exact optimum.
struct Certificate {
  double expected_greedy = 0.0;
  double expected_opt = 0.0;
  double ratio = 0.0;  // 0 when both costs are 0 (single-hypothesis instance)
  double bound = 0.0;  // 8 * (1 + ln m)
  bool pass = false;   // ratio <= bound + 1e-9
};

Certificate certify(const Instance& instance, const PolicyEvaluation& greedy_eval,
                    const PolicyEvaluation& exact_eval);

/// For each leaf, the sum of (a_i - a_(i+1)) / (a_i - 1) over the strictly
/// decreasing version-space sizes a_1 > a_2 > ... down its root path. On any
/// tree with singleton leaves each sum is at most 1 + ln m.
std::vector<double> harmonic_path_sums(const Instance& instance, const DecisionTree& tree);

}  // namespace odt

#endif  // ODT_EVALUATION_HPP
