#ifndef ODT_TREE_HPP
#define ODT_TREE_HPP

#include <string>
#include <utility>
#include <vector>

#include "odt/instance.hpp"

namespace odt {

/// A decision-tree node: internal nodes ask a query and branch on its
/// response; leaves name the identified hypothesis. Branches exist only for
/// responses realized within the node's version space and are kept sorted by
/// response code.
struct TreeNode {
  int query = -1;       // >= 0 for internal nodes
  int hypothesis = -1;  // >= 0 for leaves
  std::vector<std::pair<int, int>> branches;  // (response code, child node index)

  bool is_leaf() const { return query < 0; }
};

/// An adaptive identification policy. Nodes are stored in preorder with
/// children in response-code order, so structurally equal trees have equal
/// node arrays.
struct DecisionTree {
  int root = -1;
  std::vector<TreeNode> nodes;
  std::string algorithm;  // "greedy", "exact", or "manual"
  std::string criterion;  // split criterion name (greedy trees)

  int num_nodes() const { return static_cast<int>(nodes.size()); }

  /// Child reached from `node` on `response`, or -1 when no branch exists.
  int child(int node, int response) const;

  /// Indices of all leaf nodes, ascending.
  std::vector<int> leaves() const;
};

/// True when every hypothesis traces to its own leaf labeled with it: the
/// hypothesis-to-leaf map is a bijection onto the tree's leaves.
bool is_feasible(const Instance& instance, const DecisionTree& tree);

/// Version space at every node: members of `space_of[v]` are the hypotheses
/// whose trace passes through node v. Root gets all hypotheses.
std::vector<std::vector<int>> node_version_spaces(const Instance& instance,
                                                  const DecisionTree& tree);

}  // namespace odt

#endif  // ODT_TREE_HPP
