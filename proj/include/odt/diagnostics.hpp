#ifndef ODT_DIAGNOSTICS_HPP
#define ODT_DIAGNOSTICS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "odt/evaluation.hpp"
#include "odt/instance.hpp"
#include "odt/tree.hpp"
#include "odt/version_space.hpp"

namespace odt {

/// Absolute slack allowed before a diagnostic inequality counts as violated.
inline constexpr double kDiagnosticTolerance = 1e-9;

/// Normalized greedy criterion of a state: max over queries of
/// delta(e|V) / (c(e) * (|V| - 1)). Defined only for |V| >= 2; singletons
/// throw Error("UNDEFINED-AT-SINGLETON").
double score(const Instance& instance, const VersionSpace& vs);

/// The scale parameter the greedy guarantee is proved at.
inline double default_scale(int m) { return 4.0 * (1.0 + std::log(static_cast<double>(m))); }

/// One step of a stem walk: the query asked at a reference-tree node, the
/// heavy part B of the state's version space under it (largest cell, ties to
/// the smallest response id) and the complement J = V \ B.
struct StemStep {
  int node = -1;
  int query = -1;
  int heavy_response = -1;
  std::vector<int> heavy;
  std::vector<int> complement;
};

/// Walk of the reference (optimal) tree from its root that always follows
/// the heavy branch of the given state's version space, taking queries while
/// their total cost stays within t / L.
struct StemTrace {
  std::vector<StemStep> steps;
  double total_cost = 0.0;    // sum of step costs; <= t / L by construction
  std::vector<int> residual;  // members in every heavy part (compatible at the walk's end)
  double residual_mass = 0.0;
  bool unresolved = false;    // |residual| >= 2
};

/// Builds the stem of `state_space` at time t with scale L > 0. The walk
/// stops when the next query would exceed the budget, a leaf is reached, or
/// the heavy branch is not realized in the reference tree (the taken query
/// still counts; the residual is then empty).
StemTrace stem(const Instance& instance, const DecisionTree& reference_tree,
               const VersionSpace& state_space, double t, double L);

/// One recorded inequality check: pass iff the inequality holds within
/// kDiagnosticTolerance; slack is how much room was left (negative = broken).
struct CheckRecord {
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = true;
  std::string witness;  // offending state / query, for per-state checks
};

struct StemRecord {
  double t = 0.0;
  int node = -1;  // greedy-tree state the stem belongs to
  StemTrace trace;
};

/// Per-time-sample verdicts for the bound suite of verify_bounds().
struct DiagnosticsReport {
  int m = 0;
  double L = 0.0;
  std::vector<double> samples;
  std::vector<CheckRecord> score_lower_bound;    // E[score_t] >= (L/2t)(a_t - o_(t/L))
  std::vector<CheckRecord> stem_step_bound;      // per stem query: delta/(V-1) >= p(J)/2p(V) + p(B)/p(V) * J/(V-1)
  std::vector<CheckRecord> residual_mass_bound;  // unresolved residual mass <= o_(t/L)
  std::vector<CheckRecord> state_score_bound;    // per-state score case bound
  std::vector<CheckRecord> score_tail_bound;     // integral_(z>=t) E[score_z] dz <= (1+ln m) a_t
  std::vector<StemRecord> stems;                 // collected on demand
  bool pass = true;
};

/// Default sample times: every distinct start/end breakpoint of the tree
/// plus the midpoints of consecutive breakpoints (score and noncompletion
/// are piecewise constant, so these witness every value they take).
std::vector<double> default_time_samples(const Instance& instance, const DecisionTree& tree);

/// Runs the full bound suite relating a greedy tree to an optimal tree at
/// scale L over the given sample times (empty = default samples). Samples
/// must lie in (0, max end time] or Error("SAMPLE-OUT-OF-RANGE") is thrown.
DiagnosticsReport verify_bounds(const Instance& instance, const DecisionTree& greedy_tree,
                                const DecisionTree& optimal_tree, double L,
                                std::vector<double> time_samples = {},
                                bool collect_stems = false);

/// E[score_t] computed the other way: averaging each hypothesis's own
/// elimination rate at its active state. Agrees with the version-space
/// weighted sum used by verify_bounds up to roundoff.
double expected_score_by_hypothesis(const Instance& instance, const DecisionTree& greedy_tree,
                                    double t);

}  // namespace odt

#endif  // ODT_DIAGNOSTICS_HPP
