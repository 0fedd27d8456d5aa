#pragma once

/// @file weaver.hpp
/// ALFRED weaving: every output failure mode of a dependent component is
/// OR-ed with the failure behavior of each of its providers.

#include <string>
#include <vector>

#include "alfred/model.hpp"

namespace alfred {

/// One disjunct injected into a dependent CFT.
struct Injection {
  enum class Kind { FailureMode, BasicEvent };

  std::string dependent;
  /// Name of the new node inside the dependent CFT.
  std::string node;
  std::string provider;
  /// Provider output failure mode reference, or provider event name.
  std::string provider_element;
  Kind kind = Kind::FailureMode;

  friend bool operator==(const Injection&, const Injection&) = default;
};

struct WovenModel {
  ArchitectureModel model;
  /// In weaving order.
  std::vector<Injection> provenance;
};

/// For a provider exposing output failure modes, the injected disjunct is the
/// OR of those modes (imported by reference, so the provider's own woven
/// behavior is carried along). A provider with no output failure modes
/// contributes copies of its basic events instead; the copies live in the
/// dependent CFT under the same event identity.
///
/// Throws ModelError if `model` does not validate and WeaveError when a
/// provider has neither output failure modes nor basic events.
WovenModel weave(const ArchitectureModel& model);

/// Tab-separated `injected-node`, `provider`, `dependent`, with a header line.
std::string provenance_tsv(const WovenModel& woven);

}  // namespace alfred
