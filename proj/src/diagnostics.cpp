#include "odt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "odt/error.hpp"

namespace odt {

double score(const Instance& instance, const VersionSpace& vs) {
  if (vs.size() < 2)
    throw Error("UNDEFINED-AT-SINGLETON",
                "score divides by |V| - 1 and is only defined for states with >= 2 hypotheses");
  double best = 0.0;
  for (int e = 0; e < instance.num_queries(); ++e)
    best = std::max(best, delta(instance, vs, e) / (instance.costs[e] * (vs.size() - 1)));
  return best;
}

StemTrace stem(const Instance& instance, const DecisionTree& reference_tree,
               const VersionSpace& state_space, double t, double L) {
  if (!(L > 0.0)) throw Error("USAGE-ERROR", "stem needs a positive scale L");
  if (state_space.empty()) throw Error("STATE-ERROR", "stem needs a nonempty version space");
  const double budget = t / L;

  StemTrace trace;
  std::vector<int> survivors = state_space.members;
  int node = reference_tree.root;

  while (node >= 0 && !reference_tree.nodes[node].is_leaf()) {
    const int query = reference_tree.nodes[node].query;
    if (trace.total_cost + instance.costs[query] > budget) break;

    const Partition cells = partition(instance, state_space, query);
    const int heavy = cells.heavy_part();
    StemStep step;
    step.node = node;
    step.query = query;
    step.heavy_response = cells.parts[heavy].response;
    step.heavy = cells.parts[heavy].space.members;
    for (int i = 0; i < cells.part_count(); ++i) {
      if (i == heavy) continue;
      // The heavy choice guarantees each other part leaves at least half of
      // the state's version space eliminated: |V| - |S_i| >= |V| / 2.
      if (2 * (cells.parent_size - cells.parts[i].space.size()) < cells.parent_size)
        throw Error("INTERNAL-ERROR", "heavy part selection violated the half-space bound");
      step.complement.insert(step.complement.end(), cells.parts[i].space.members.begin(),
                             cells.parts[i].space.members.end());
    }
    std::sort(step.complement.begin(), step.complement.end());
    trace.total_cost += instance.costs[query];

    std::vector<int> next;
    std::set_intersection(survivors.begin(), survivors.end(), step.heavy.begin(), step.heavy.end(),
                          std::back_inserter(next));
    survivors = std::move(next);
    trace.steps.push_back(std::move(step));

    // When the heavy branch is unrealized in the reference tree the walk
    // stops here; no survivor answered the heavy response, so the residual
    // set is already empty.
    node = reference_tree.child(node, trace.steps.back().heavy_response);
  }

  trace.residual = std::move(survivors);
  for (int h : trace.residual) trace.residual_mass += instance.priors[h];
  trace.unresolved = trace.residual.size() >= 2;
  return trace;
}

std::vector<double> default_time_samples(const Instance& instance, const DecisionTree& tree) {
  const NodeTiming schedule = timing(instance, tree);
  std::vector<double> breakpoints;
  for (int v = 0; v < tree.num_nodes(); ++v) {
    breakpoints.push_back(schedule.start[v]);
    breakpoints.push_back(schedule.end[v]);
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  std::vector<double> samples;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (i > 0) samples.push_back(std::midpoint(breakpoints[i - 1], breakpoints[i]));
    if (breakpoints[i] > 0.0) samples.push_back(breakpoints[i]);
  }
  // Midpoints of one-ulp segments collapse onto a breakpoint; drop repeats.
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  return samples;
}

namespace {

struct WorstCase {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = std::numeric_limits<double>::infinity();
  std::string witness = "none";
  bool seen = false;

  void offer(double candidate_lhs, double candidate_rhs, std::string candidate_witness) {
    const double candidate_slack = candidate_lhs - candidate_rhs;
    if (!seen || candidate_slack < slack) {
      lhs = candidate_lhs;
      rhs = candidate_rhs;
      slack = candidate_slack;
      witness = std::move(candidate_witness);
    }
    seen = true;
  }

  CheckRecord record(double t) const {
    CheckRecord rec;
    rec.t = t;
    rec.lhs = seen ? lhs : 0.0;
    rec.rhs = seen ? rhs : 0.0;
    rec.slack = seen ? slack : 0.0;
    rec.pass = !seen || slack >= -kDiagnosticTolerance;
    rec.witness = witness;
    return rec;
  }
};

}  // namespace

DiagnosticsReport verify_bounds(const Instance& instance, const DecisionTree& greedy_tree,
                                const DecisionTree& optimal_tree, double L,
                                std::vector<double> time_samples, bool collect_stems) {
  if (!(L > 0.0)) throw Error("USAGE-ERROR", "verify_bounds needs a positive scale L");

  DiagnosticsReport report;
  report.m = instance.num_hypotheses();
  report.L = L;

  const PolicyEvaluation greedy_eval = evaluate(instance, greedy_tree);
  const PolicyEvaluation exact_eval = evaluate(instance, optimal_tree);
  const NodeTiming schedule = timing(instance, greedy_tree);
  const auto members_of = node_version_spaces(instance, greedy_tree);

  // Per-node version spaces and scores of the greedy tree. Scores only make
  // sense for internal nodes; occupied_states never returns leaves.
  std::vector<VersionSpace> spaces(greedy_tree.num_nodes());
  std::vector<double> node_score(greedy_tree.num_nodes(), 0.0);
  double max_end = 0.0;
  for (int v = 0; v < greedy_tree.num_nodes(); ++v) {
    spaces[v] = make_space(instance, members_of[v]);
    if (!greedy_tree.nodes[v].is_leaf()) node_score[v] = score(instance, spaces[v]);
    max_end = std::max(max_end, schedule.end[v]);
  }

  if (time_samples.empty()) {
    time_samples = default_time_samples(instance, greedy_tree);
  } else {
    for (double t : time_samples)
      if (!(t > 0.0) || t > max_end)
        throw Error("SAMPLE-OUT-OF-RANGE", "sample times must lie in (0, " +
                                               std::to_string(max_end) + "], got " +
                                               std::to_string(t));
    std::sort(time_samples.begin(), time_samples.end());
    time_samples.erase(std::unique(time_samples.begin(), time_samples.end()), time_samples.end());
  }
  report.samples = time_samples;

  // E[score_z] is piecewise constant between breakpoints of the schedule;
  // integrate it segment by segment for the tail bound.
  std::vector<double> breakpoints;
  for (int v = 0; v < greedy_tree.num_nodes(); ++v) {
    breakpoints.push_back(schedule.start[v]);
    breakpoints.push_back(schedule.end[v]);
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  const int segments = std::max(0, static_cast<int>(breakpoints.size()) - 1);
  std::vector<double> segment_value(segments, 0.0);
  for (int i = 0; i < segments; ++i) {
    const double midpoint = std::midpoint(breakpoints[i], breakpoints[i + 1]);
    for (int v : occupied_states(greedy_tree, schedule, midpoint))
      segment_value[i] += node_score[v] * spaces[v].mass;
  }
  std::vector<double> tail_from(segments + 1, 0.0);  // integral from breakpoints[i] onward
  for (int i = segments - 1; i >= 0; --i)
    tail_from[i] = tail_from[i + 1] + segment_value[i] * (breakpoints[i + 1] - breakpoints[i]);

  auto tail_integral = [&](double t) {
    // First segment (b_i, b_(i+1)] whose right end reaches t.
    const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t);
    if (it == breakpoints.end()) return 0.0;
    const int i = static_cast<int>(it - breakpoints.begin());
    if (i == 0) return tail_from[0];
    return segment_value[i - 1] * (breakpoints[i] - t) + tail_from[i];
  };

  const double log_cap = 1.0 + std::log(static_cast<double>(report.m));

  for (double t : report.samples) {
    const double a_t = greedy_eval.noncompletion.value(t);
    const double o_scaled = exact_eval.noncompletion.value(t / L);
    const std::vector<int> occupied = occupied_states(greedy_tree, schedule, t);

    double expected_score = 0.0;
    for (int v : occupied) expected_score += node_score[v] * spaces[v].mass;

    CheckRecord lower;
    lower.t = t;
    lower.lhs = expected_score;
    lower.rhs = L / (2.0 * t) * (a_t - o_scaled);
    lower.slack = lower.lhs - lower.rhs;
    lower.pass = lower.slack >= -kDiagnosticTolerance;
    report.score_lower_bound.push_back(lower);

    WorstCase step_worst;
    WorstCase state_worst;
    double unresolved_mass = 0.0;
    for (int v : occupied) {
      const VersionSpace& vs = spaces[v];
      const StemTrace trace = stem(instance, optimal_tree, vs, t, L);
      if (collect_stems) report.stems.push_back({t, v, trace});

      for (const StemStep& step : trace.steps) {
        double heavy_mass = 0.0;
        for (int h : step.heavy) heavy_mass += instance.priors[h];
        const double complement_mass = vs.mass - heavy_mass;
        const double lhs = delta(instance, vs, step.query) / (vs.size() - 1);
        const double rhs = complement_mass / (2.0 * vs.mass) +
                           heavy_mass / vs.mass * static_cast<double>(step.complement.size()) /
                               (vs.size() - 1);
        step_worst.offer(lhs, rhs,
                         "node " + std::to_string(v) + ", query '" +
                             instance.query_ids[step.query] + "'");
      }

      const double case_bound = trace.unresolved
                                    ? L / (2.0 * t) * (1.0 - trace.residual_mass / vs.mass)
                                    : L / (2.0 * t);
      state_worst.offer(node_score[v], case_bound, "node " + std::to_string(v));
      if (trace.unresolved) unresolved_mass += trace.residual_mass;
    }
    report.stem_step_bound.push_back(step_worst.record(t));
    report.state_score_bound.push_back(state_worst.record(t));

    CheckRecord residual;
    residual.t = t;
    residual.lhs = unresolved_mass;
    residual.rhs = o_scaled;
    residual.slack = residual.rhs - residual.lhs;
    residual.pass = residual.slack >= -kDiagnosticTolerance;
    report.residual_mass_bound.push_back(residual);

    CheckRecord tail;
    tail.t = t;
    tail.lhs = tail_integral(t);
    tail.rhs = log_cap * a_t;
    tail.slack = tail.rhs - tail.lhs;
    tail.pass = tail.slack >= -kDiagnosticTolerance;
    report.score_tail_bound.push_back(tail);
  }

  for (const auto* checks : {&report.score_lower_bound, &report.stem_step_bound,
                             &report.residual_mass_bound, &report.state_score_bound,
                             &report.score_tail_bound})
    for (const CheckRecord& rec : *checks) report.pass = report.pass && rec.pass;
  return report;
}

double expected_score_by_hypothesis(const Instance& instance, const DecisionTree& greedy_tree,
                                    double t) {
  const NodeTiming schedule = timing(instance, greedy_tree);
  const auto members_of = node_version_spaces(instance, greedy_tree);
  double total = 0.0;
  for (int h = 0; h < instance.num_hypotheses(); ++h) {
    int v = greedy_tree.root;
    while (!greedy_tree.nodes[v].is_leaf()) {
      const int query = greedy_tree.nodes[v].query;
      if (schedule.start[v] < t && t <= schedule.end[v]) {
        // This hypothesis is mid-query here at time t: its own elimination
        // rate is (|V| - |part containing h|) / (c (|V| - 1)).
        const int response = instance.response(query, h);
        int part_size = 0;
        for (int other : members_of[v])
          if (instance.response(query, other) == response) ++part_size;
        const double rate = (static_cast<double>(members_of[v].size()) - part_size) /
                            (instance.costs[query] * (members_of[v].size() - 1));
        total += instance.priors[h] * rate;
        break;
      }
      v = greedy_tree.child(v, instance.response(query, h));
    }
  }
  return total;
}

}  // namespace odt
