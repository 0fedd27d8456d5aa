#include "alfred/analyzer.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "alfred/error.hpp"

namespace alfred {

std::string_view to_string(Stage stage) {
  return stage == Stage::PreReduction ? "pre" : "reduced";
}

Stage parse_stage(std::string_view text) {
  if (text == "pre") return Stage::PreReduction;
  if (text == "reduced") return Stage::Reduced;
  throw AnalysisError("unknown stage '" + std::string(text) +
                      "' (expected pre or reduced)");
}

namespace {

using Literals = std::vector<int>;

std::vector<std::size_t> reachable(const FaultTree& tree) {
  std::vector<bool> seen(tree.nodes.size(), false);
  std::vector<std::size_t> order;
  std::vector<std::size_t> stack{tree.root};
  while (!stack.empty()) {
    std::size_t n = stack.back();
    stack.pop_back();
    if (seen[n]) continue;
    seen[n] = true;
    order.push_back(n);
    for (std::size_t c : tree.nodes[n].children) stack.push_back(c);
  }
  std::sort(order.begin(), order.end());
  return order;
}

bool subset(const Literals& small, const Literals& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void insert_sorted(Literals& set, int value) {
  auto it = std::lower_bound(set.begin(), set.end(), value);
  if (it == set.end() || *it != value) set.insert(it, value);
}

/// Drops duplicates and supersets.
std::vector<Literals> minimize(std::vector<Literals> sets) {
  std::sort(sets.begin(), sets.end(), [](const Literals& a, const Literals& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Literals> kept;
  for (Literals& s : sets) {
    bool absorbed = std::any_of(kept.begin(), kept.end(),
                                [&](const Literals& k) { return subset(k, s); });
    if (!absorbed) kept.push_back(std::move(s));
  }
  return kept;
}

/// MOCUS: rows of pending tree nodes plus collected leaf variables. An OR
/// splits a row, an AND widens it. Rows already covered by a finished cutset
/// are dropped since expansion only ever adds literals.
std::vector<Literals> expand(const FaultTree& tree,
                             const std::vector<int>& variable_of) {
  struct Row {
    std::vector<std::size_t> pending;
    Literals literals;
  };
  std::vector<Literals> finished;
  std::vector<Row> stack{{{tree.root}, {}}};
  while (!stack.empty()) {
    Row row = std::move(stack.back());
    stack.pop_back();
    while (!row.pending.empty()) {
      std::size_t n = row.pending.back();
      row.pending.pop_back();
      const FaultTreeNode& node = tree.nodes[n];
      if (node.is_leaf()) {
        insert_sorted(row.literals, variable_of[n]);
      } else if (node.kind == NodeKind::And) {
        for (std::size_t c : node.children) {
          if (std::find(row.pending.begin(), row.pending.end(), c) ==
              row.pending.end()) {
            row.pending.push_back(c);
          }
        }
      } else {
        // OR: this row continues with the first child, the others fork.
        for (std::size_t i = 1; i < node.children.size(); ++i) {
          Row fork = row;
          fork.pending.push_back(node.children[i]);
          stack.push_back(std::move(fork));
        }
        row.pending.push_back(node.children.front());
      }
      if (std::any_of(finished.begin(), finished.end(),
                      [&](const Literals& k) {
                        return subset(k, row.literals);
                      })) {
        row.pending.clear();
        row.literals.clear();
        break;
      }
    }
    if (!row.literals.empty()) finished.push_back(std::move(row.literals));
  }
  return minimize(std::move(finished));
}

}  // namespace

CutSetReport cutsets(const FaultTree& tree, Stage stage) {
  if (tree.nodes.empty()) throw AnalysisError("empty fault tree");
  const std::vector<std::size_t> live = reachable(tree);

  // identity -> labels of the leaves carrying it
  std::map<std::string, std::set<std::string>> labels_of;
  std::map<std::string, std::string> identity_of;
  std::set<std::string> keys;
  for (std::size_t n : live) {
    const FaultTreeNode& node = tree.nodes[n];
    if (node.kind == NodeKind::Not) {
      throw AnalysisError(
          "non-coherent tree: cutset semantics undefined (NOT gate present)");
    }
    if (!node.is_leaf() && node.children.empty()) {
      throw AnalysisError("gate without inputs in fault tree");
    }
    if (!node.is_leaf()) continue;
    labels_of[node.identity].insert(node.label);
    identity_of[node.label] = node.identity;
    keys.insert(stage == Stage::PreReduction ? node.label : node.identity);
  }

  const std::vector<std::string> names(keys.begin(), keys.end());
  std::vector<int> variable_of(tree.nodes.size(), -1);
  for (std::size_t n : live) {
    const FaultTreeNode& node = tree.nodes[n];
    if (!node.is_leaf()) continue;
    const std::string& key =
        stage == Stage::PreReduction ? node.label : node.identity;
    variable_of[n] = static_cast<int>(
        std::lower_bound(names.begin(), names.end(), key) - names.begin());
  }

  CutSetReport report;
  report.stage = stage;
  for (const Literals& literals : expand(tree, variable_of)) {
    CutSet cs;
    std::set<std::string> identities;
    for (int v : literals) {
      const std::string& key = names[v];
      if (stage == Stage::PreReduction) {
        cs.members.push_back(key);
        identities.insert(identity_of.at(key));
      } else {
        const std::set<std::string>& labels = labels_of.at(key);
        cs.members.push_back(labels.size() == 1 ? *labels.begin() : key);
        identities.insert(key);
      }
    }
    std::sort(cs.members.begin(), cs.members.end());
    cs.identities.assign(identities.begin(), identities.end());
    report.cutsets.push_back(std::move(cs));
  }
  std::sort(report.cutsets.begin(), report.cutsets.end(),
            [](const CutSet& a, const CutSet& b) {
              return a.members.size() != b.members.size()
                         ? a.members.size() < b.members.size()
                         : a.members < b.members;
            });
  return report;
}

namespace {

std::string format(const CutSetReport& report, std::string_view separator) {
  std::string out;
  for (const CutSet& cs : report.cutsets) {
    for (std::size_t i = 0; i < cs.members.size(); ++i) {
      if (i) out += separator;
      out += cs.members[i];
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string format_text(const CutSetReport& report) {
  return format(report, " ∧ ");
}

std::string format_tsv(const CutSetReport& report) {
  return format(report, "\t");
}

bool evaluate(const FaultTree& tree,
              const std::map<std::string, bool>& assignment) {
  if (tree.nodes.empty()) throw AnalysisError("empty fault tree");
  // -1 unknown, 0 false, 1 true
  std::vector<signed char> value(tree.nodes.size(), -1);
  std::function<bool(std::size_t)> eval = [&](std::size_t n) -> bool {
    if (value[n] >= 0) return value[n] == 1;
    const FaultTreeNode& node = tree.nodes[n];
    bool result = false;
    switch (node.kind) {
      case NodeKind::BasicEvent:
      case NodeKind::ExternalEvent: {
        auto it = assignment.find(node.identity);
        if (it == assignment.end()) {
          throw AnalysisError("assignment misses identity '" + node.identity +
                              "'");
        }
        result = it->second;
        break;
      }
      case NodeKind::And:
        result = true;
        for (std::size_t c : node.children) result = eval(c) && result;
        break;
      case NodeKind::Or:
        for (std::size_t c : node.children) result = eval(c) || result;
        break;
      case NodeKind::Not:
        result = !eval(node.children.at(0));
        break;
    }
    value[n] = result ? 1 : 0;
    return result;
  };
  return eval(tree.root);
}

}  // namespace alfred
