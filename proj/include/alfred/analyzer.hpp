#pragma once

/// @file analyzer.hpp
/// Qualitative fault tree analysis: minimal cutsets and Boolean evaluation.

#include <map>
#include <string>
#include <vector>

#include "alfred/fault_tree.hpp"

namespace alfred {

enum class Stage {
  /// Every leaf label is its own variable: an event injected into two
  /// dependents appears once per dependent.
  PreReduction,
  /// Leaves collapse to event identity before minimisation, which merges
  /// common-cause occurrences.
  Reduced,
};

std::string_view to_string(Stage stage);
/// Accepts `pre` and `reduced`; throws AnalysisError otherwise.
Stage parse_stage(std::string_view text);

struct CutSet {
  /// Sorted, distinct display names at the report's stage.
  std::vector<std::string> members;
  /// Sorted, distinct event identities behind `members`.
  std::vector<std::string> identities;

  friend bool operator==(const CutSet&, const CutSet&) = default;
};

struct CutSetReport {
  Stage stage = Stage::Reduced;
  /// Ascending cardinality, then lexicographic by members.
  std::vector<CutSet> cutsets;
};

/// Minimal cutsets by top-down (MOCUS) expansion with subsumption.
///
/// At the reduced stage a cutset member is named by the label of its leaf
/// when every leaf of that identity carries the same label, and by the
/// identity itself when a common-cause collapse merged differently labelled
/// leaves.
///
/// Throws AnalysisError for trees containing NOT ("non-coherent tree") and
/// for empty trees.
CutSetReport cutsets(const FaultTree& tree, Stage stage);

/// One cutset per line, members joined by ` ∧ `.
std::string format_text(const CutSetReport& report);
/// One cutset per line, members separated by tabs.
std::string format_tsv(const CutSetReport& report);

/// Evaluates the tree with leaves looked up by identity. Throws
/// AnalysisError when an identity is missing from `assignment`.
bool evaluate(const FaultTree& tree,
              const std::map<std::string, bool>& assignment);

}  // namespace alfred
