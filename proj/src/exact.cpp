#include "odt/exact.hpp"

#include <bit>
#include <unordered_map>
#include <vector>

#include "odt/error.hpp"
#include "odt/version_space.hpp"

namespace odt {

namespace {

struct MemoEntry {
  double cost = 0.0;  // unnormalized: p(V) times the conditional expected cost
  int best_query = -1;
};

struct Solver {
  const Instance& instance;
  std::uint64_t budget;
  std::unordered_map<std::uint64_t, MemoEntry> memo;
  ExactStats stats;
  std::vector<std::uint64_t> scratch;  // per-response child masks, reused

  double mass(std::uint64_t mask) const {
    double total = 0.0;
    for (std::uint64_t bits = mask; bits;) {
      const int h = std::countr_zero(bits);
      total += instance.priors[h];
      bits &= bits - 1;
    }
    return total;
  }

  std::string describe(std::uint64_t mask) const {
    std::string ids;
    for (std::uint64_t bits = mask; bits;) {
      const int h = std::countr_zero(bits);
      if (!ids.empty()) ids += ", ";
      ids += instance.hypothesis_ids[h];
      bits &= bits - 1;
    }
    return ids;
  }

  /// Child masks of `mask` under `query`, realized responses only.
  std::vector<std::uint64_t> split(std::uint64_t mask, int query) {
    scratch.assign(instance.alphabet_size(query), 0);
    for (std::uint64_t bits = mask; bits;) {
      const int h = std::countr_zero(bits);
      scratch[instance.response(query, h)] |= std::uint64_t{1} << h;
      bits &= bits - 1;
    }
    std::vector<std::uint64_t> parts;
    for (std::uint64_t part : scratch)
      if (part) parts.push_back(part);
    return parts;
  }

  const MemoEntry& solve(std::uint64_t mask) {
    if (auto it = memo.find(mask); it != memo.end()) {
      ++stats.cache_hits;
      return it->second;
    }
    MemoEntry entry;
    if (std::popcount(mask) == 1) return memo.emplace(mask, entry).first->second;

    if (++stats.states_expanded > budget)
      throw Error("BUDGET-EXCEEDED", "state budget exhausted after " +
                                         std::to_string(stats.states_expanded - 1) +
                                         " expanded version spaces");
    const double here = mass(mask);
    bool found = false;
    double best = 0.0;
    for (int e = 0; e < instance.num_queries(); ++e) {
      const std::vector<std::uint64_t> parts = split(mask, e);
      if (parts.size() < 2) continue;  // non-splitting queries cannot be optimal
      double total = instance.costs[e] * here;
      for (std::uint64_t part : parts) total += solve(part).cost;
      if (!found || total < best) {
        best = total;
        entry.best_query = e;
        found = true;
      }
    }
    if (!found)
      throw Error("INFEASIBLE", "no query splits the reachable version space {" + describe(mask) + "}");
    entry.cost = best;
    return memo.emplace(mask, entry).first->second;
  }

  int rebuild(std::uint64_t mask, DecisionTree& tree) {
    const int index = tree.num_nodes();
    tree.nodes.emplace_back();
    if (std::popcount(mask) == 1) {
      tree.nodes[index].hypothesis = std::countr_zero(mask);
      return index;
    }
    const int query = memo.at(mask).best_query;
    tree.nodes[index].query = query;
    for (std::uint64_t part : split(mask, query)) {
      const int response = instance.response(query, std::countr_zero(part));
      const int child = rebuild(part, tree);
      tree.nodes[index].branches.emplace_back(response, child);
    }
    return index;
  }
};

}  // namespace

ExactResult exact_solve(const Instance& instance, std::uint64_t state_budget) {
  const int m = instance.num_hypotheses();
  if (m > 64)
    throw Error("SIZE-EXCEEDED", "exact solver is limited to 64 hypotheses, got " + std::to_string(m));
  const std::uint64_t everyone = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;

  Solver solver{instance, state_budget, {}, {}, {}};
  const double total_cost = solver.solve(everyone).cost;

  ExactResult result;
  result.expected_cost = total_cost / solver.mass(everyone);
  result.tree.algorithm = "exact";
  result.tree.root = solver.rebuild(everyone, result.tree);
  result.stats = solver.stats;
  return result;
}

namespace {

double enumerate_cost(const Instance& instance, const std::vector<int>& members) {
  if (members.size() == 1) return 0.0;
  double parent_mass = 0.0;
  for (int h : members) parent_mass += instance.priors[h];

  bool found = false;
  double best = 0.0;
  std::vector<std::vector<int>> parts;
  for (int e = 0; e < instance.num_queries(); ++e) {
    parts.assign(instance.alphabet_size(e), {});
    for (int h : members) parts[instance.response(e, h)].push_back(h);
    int realized = 0;
    for (const auto& part : parts) realized += part.empty() ? 0 : 1;
    if (realized < 2) continue;
    double total = instance.costs[e];
    for (const auto& part : parts) {
      if (part.empty()) continue;
      double part_mass = 0.0;
      for (int h : part) part_mass += instance.priors[h];
      total += part_mass / parent_mass * enumerate_cost(instance, part);
    }
    if (!found || total < best) {
      best = total;
      found = true;
    }
  }
  if (!found) throw Error("INFEASIBLE", "no query splits a reachable version space");
  return best;
}

}  // namespace

double enumerate_optimum(const Instance& instance) {
  if (instance.num_hypotheses() > 5 || instance.num_queries() > 5)
    throw Error("SIZE-EXCEEDED", "enumeration is capped at m <= 5 and n <= 5");
  std::vector<int> everyone(instance.num_hypotheses());
  for (int h = 0; h < instance.num_hypotheses(); ++h) everyone[h] = h;
  return enumerate_cost(instance, everyone);
}

}  // namespace odt
