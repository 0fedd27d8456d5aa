#pragma once

#include "alfred/fault_tree.hpp"
#include "alfred/model.hpp"
#include "alfred/weaver.hpp"

namespace alfred {

/// Flattens the CFT network into one fault tree for `top`.
///
/// An input failure mode on a connected in port resolves to the upstream
/// output failure mode of the same name on the connected out port; one on an
/// unconnected (or no) port becomes an external event leaf. Imported failure
/// modes resolve to the provider's output failure mode. Each CFT node maps
/// to exactly one tree node, so shared subtrees are shared.
///
/// Throws ModelError for an unknown top event or an invalid model,
/// SynthesisError("propagation cycle ...") and
/// SynthesisError("unmatched failure mode ...").
FaultTree synthesize(const ArchitectureModel& model, const TopEventRef& top);

FaultTree synthesize(const WovenModel& woven, const TopEventRef& top);

}  // namespace alfred
