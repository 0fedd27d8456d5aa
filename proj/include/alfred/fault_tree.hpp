#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace alfred {

enum class NodeKind { And, Or, Not, BasicEvent, ExternalEvent };

struct FaultTreeNode {
  NodeKind kind = NodeKind::Or;
  /// Indices into FaultTree::nodes; empty for leaves.
  std::vector<std::size_t> children;
  /// Leaves only. Basic events carry their (possibly shared) event identity;
  /// external events carry `ext@<component>.[<port>.]<failure-mode>`.
  std::string identity;
  /// Leaves only: `<owner>.<event>` for basic events, the identity for
  /// external events.
  std::string label;
  /// Leaves only: component whose CFT holds the leaf.
  std::string owner;

  bool is_leaf() const {
    return kind == NodeKind::BasicEvent || kind == NodeKind::ExternalEvent;
  }

  friend bool operator==(const FaultTreeNode&, const FaultTreeNode&) = default;
};

/// Flattened fault tree for one top event. Nodes form a DAG: a subtree
/// reached along several paths is stored once. Children come before their
/// parents in `nodes`, so the root is the last node.
struct FaultTree {
  std::string top;
  std::vector<FaultTreeNode> nodes;
  std::size_t root = 0;

  /// Distinct leaf identities.
  std::set<std::string> identities() const;

  friend bool operator==(const FaultTree&, const FaultTree&) = default;
};

std::string_view to_string(NodeKind kind);

/// `OR(AND(x,y),z)`, leaves printed by label. Shared subtrees are printed at
/// every occurrence.
std::string to_prefix(const FaultTree& tree);

}  // namespace alfred
