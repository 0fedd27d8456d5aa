#include "alfred/fault_tree.hpp"

namespace alfred {

std::set<std::string> FaultTree::identities() const {
  std::set<std::string> out;
  for (const FaultTreeNode& n : nodes) {
    if (n.is_leaf()) out.insert(n.identity);
  }
  return out;
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::And:
      return "AND";
    case NodeKind::Or:
      return "OR";
    case NodeKind::Not:
      return "NOT";
    case NodeKind::BasicEvent:
      return "EVENT";
    case NodeKind::ExternalEvent:
      return "EXTERNAL";
  }
  return "?";
}

namespace {

void render(const FaultTree& tree, std::size_t index, std::string& out) {
  const FaultTreeNode& node = tree.nodes[index];
  if (node.is_leaf()) {
    out += node.label;
    return;
  }
  out += to_string(node.kind);
  out += '(';
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (i) out += ',';
    render(tree, node.children[i], out);
  }
  out += ')';
}

}  // namespace

std::string to_prefix(const FaultTree& tree) {
  std::string out;
  if (!tree.nodes.empty()) render(tree, tree.root, out);
  return out;
}

}  // namespace alfred
