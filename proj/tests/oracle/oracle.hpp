#pragma once

/// @file oracle.hpp
/// Brute-force reference semantics for tests. The network evaluator walks the
/// CFT network directly, resolving ports and imports on the fly, and shares
/// no code with the synthesizer or the analyzer.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alfred/analyzer.hpp"
#include "alfred/fault_tree.hpp"
#include "alfred/model.hpp"

namespace alfred::oracle {

constexpr std::size_t kMaxVariables = 24;

enum class ExternalPolicy { Free, PinnedFalse };

/// Row `r` assigns variables[i] = bit i of r.
struct TruthTable {
  std::vector<std::string> variables;
  std::vector<bool> verdicts;

  bool at(std::uint64_t row) const { return verdicts[row]; }
  std::size_t true_count() const;
};

/// Sorted identities (basic and external) the top event depends on. Under
/// PinnedFalse, externals are not variables.
std::vector<std::string> network_variables(const ArchitectureModel& model,
                                           const TopEventRef& top,
                                           ExternalPolicy policy =
                                               ExternalPolicy::Free);

/// Exhaustive table of one output failure mode evaluated on the network.
/// `variables` defaults to network_variables(); a caller-supplied list may
/// contain extra variables but must cover every needed identity. Throws
/// std::invalid_argument when the list exceeds kMaxVariables or misses an
/// identity, std::runtime_error on a propagation cycle or unmatched failure
/// mode.
TruthTable table_of_network(
    const ArchitectureModel& model, const TopEventRef& top,
    ExternalPolicy policy = ExternalPolicy::Free,
    std::optional<std::vector<std::string>> variables = std::nullopt);

/// Table of a fault tree; `variables` defaults to the sorted leaf identities.
TruthTable table_of_tree(
    const FaultTree& tree,
    std::optional<std::vector<std::string>> variables = std::nullopt);

/// Table of the DNF formed by the cutsets' identities.
TruthTable table_of_cutsets(const CutSetReport& report,
                            std::vector<std::string> variables);

/// Bitwise equality. Throws std::invalid_argument when the variable orders
/// differ.
bool equivalent(const TruthTable& a, const TruthTable& b);

/// Pointwise a => b, same variable order required.
bool implies(const TruthTable& a, const TruthTable& b);

}  // namespace alfred::oracle
