#include "odt/criteria.hpp"

#include <algorithm>

#include "odt/error.hpp"

namespace odt {

SplitSummary summarize(const Partition& partition) {
  SplitSummary summary;
  summary.parent_size = partition.parent_size;
  summary.part_sizes.reserve(partition.part_count());
  summary.conditionals.reserve(partition.part_count());
  for (const PartitionPart& part : partition.parts) {
    summary.part_sizes.push_back(part.space.size());
    summary.conditionals.push_back(part.conditional);
  }
  return summary;
}

double Criterion::score(const SplitSummary& summary, double cost) const {
  if (binary_only && summary.part_count() > 2)
    throw Error("ARITY-ERROR", "criterion '" + name + "' only accepts binary splits, got " +
                                   std::to_string(summary.part_count()) + " parts");
  return eval(summary, cost);
}

namespace {

double eval_delta_over_cost(const SplitSummary& s, double cost) {
  double expected = 0.0;
  for (int i = 0; i < s.part_count(); ++i)
    expected += s.conditionals[i] * (s.parent_size - s.part_sizes[i]);
  return expected / cost;
}

double eval_min_branch_prob(const SplitSummary& s, double) {
  if (s.part_count() < 2) return 0.0;
  return std::min(s.conditionals[0], s.conditionals[1]);
}

double eval_size_product(const SplitSummary& s, double cost) {
  if (s.part_count() < 2) return 0.0;
  return static_cast<double>(s.part_sizes[0]) * s.part_sizes[1] / cost;
}

double eval_prob_pairs(const SplitSummary& s, double) {
  double sum = 0.0;
  for (int i = 0; i < s.part_count(); ++i)
    for (int j = 0; j < s.part_count(); ++j)
      if (i != j) sum += s.conditionals[i] * s.conditionals[j];
  return sum;
}

double eval_max_cut(const SplitSummary& s, double) {
  int largest = 0;
  for (int size : s.part_sizes) largest = std::max(largest, size);
  return s.parent_size - largest;
}

double eval_gini(const SplitSummary& s, double cost) {
  double sum_squares = 0.0;
  for (double si : s.conditionals) sum_squares += si * si;
  return (1.0 - sum_squares) / cost;
}

double eval_expected_cut(const SplitSummary& s, double) {
  double sum = 0.0;
  for (int i = 0; i < s.part_count(); ++i) sum += s.part_sizes[i] * (1.0 - s.conditionals[i]);
  return sum;
}

double eval_size_pairs(const SplitSummary& s, double cost) {
  double sum = 0.0;
  for (int size : s.part_sizes) sum += static_cast<double>(size) * (s.parent_size - size);
  return sum / cost;
}

double eval_augmented_cut(const SplitSummary& s, double cost) {
  int top = 0;  // most probable part, ties to the smallest response code
  for (int i = 1; i < s.part_count(); ++i)
    if (s.conditionals[i] > s.conditionals[top]) top = i;
  double sum = s.parent_size * (1.0 - s.conditionals[top]);
  for (int i = 0; i < s.part_count(); ++i) sum += s.part_sizes[i] * (1.0 - s.conditionals[i]);
  return sum / cost;
}

}  // namespace

const std::vector<Criterion>& criterion_catalog() {
  static const std::vector<Criterion> catalog = {
      {"delta-over-cost", "expected newly eliminated hypotheses per unit cost",
       false, true, false, eval_delta_over_cost},
      {"min-branch-prob", "probability of the rarer branch (binary splits)",
       true, false, false, eval_min_branch_prob},
      {"size-product", "product of the two part sizes per unit cost (binary splits)",
       true, true, false, eval_size_product},
      {"prob-pairs", "probability that two independent draws take different branches",
       false, false, false, eval_prob_pairs},
      {"max-cut", "hypotheses eliminated in the worst response",
       false, false, false, eval_max_cut},
      {"gini", "Gini impurity of the response distribution per unit cost",
       false, true, false, eval_gini},
      {"expected-cut", "expected newly eliminated hypotheses, unscaled by cost",
       false, false, false, eval_expected_cut},
      {"size-pairs", "sum of |S_i| * (|V| - |S_i|) per unit cost",
       false, true, false, eval_size_pairs},
      {"augmented-cut", "expected-cut plus a |V|(1 - s_top) bonus, per unit cost; "
       "s_top is the most probable part (experimental)",
       false, true, true, eval_augmented_cut},
  };
  return catalog;
}

const Criterion& default_criterion() { return criterion_catalog().front(); }

const Criterion& find_criterion(const std::string& name) {
  for (const Criterion& criterion : criterion_catalog())
    if (criterion.name == name) return criterion;
  throw Error("UNKNOWN-CRITERION", "no criterion named '" + name + "'");
}

}  // namespace odt
