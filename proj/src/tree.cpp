#include "odt/tree.hpp"

#include <algorithm>

namespace odt {

int DecisionTree::child(int node, int response) const {
  for (const auto& [code, target] : nodes[node].branches)
    if (code == response) return target;
  return -1;
}

std::vector<int> DecisionTree::leaves() const {
  std::vector<int> result;
  for (int v = 0; v < num_nodes(); ++v)
    if (nodes[v].is_leaf()) result.push_back(v);
  return result;
}

bool is_feasible(const Instance& instance, const DecisionTree& tree) {
  if (tree.root < 0) return instance.num_hypotheses() == 0;
  std::vector<bool> leaf_hit(tree.num_nodes(), false);
  for (int h = 0; h < instance.num_hypotheses(); ++h) {
    int v = tree.root;
    while (!tree.nodes[v].is_leaf()) {
      v = tree.child(v, instance.response(tree.nodes[v].query, h));
      if (v < 0) return false;
    }
    if (tree.nodes[v].hypothesis != h || leaf_hit[v]) return false;
    leaf_hit[v] = true;
  }
  for (int v = 0; v < tree.num_nodes(); ++v)
    if (tree.nodes[v].is_leaf() && !leaf_hit[v]) return false;
  return true;
}

std::vector<std::vector<int>> node_version_spaces(const Instance& instance,
                                                  const DecisionTree& tree) {
  std::vector<std::vector<int>> space_of(tree.num_nodes());
  for (int h = 0; h < instance.num_hypotheses(); ++h) {
    int v = tree.root;
    while (true) {
      space_of[v].push_back(h);
      if (tree.nodes[v].is_leaf()) break;
      v = tree.child(v, instance.response(tree.nodes[v].query, h));
      if (v < 0) break;  // off-tree trace; callers checking feasibility will notice
    }
  }
  for (auto& members : space_of) std::sort(members.begin(), members.end());
  return space_of;
}

}  // namespace odt
