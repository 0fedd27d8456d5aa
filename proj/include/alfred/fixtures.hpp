#pragma once

/// @file fixtures.hpp
/// Reference models shipped with the library:
///  - `example_fig2`: two functions on a software layer depending on RAM and
///    CPU on a hardware layer.
///  - `vehicle`: emergency-braking demonstrator vehicle with battery and
///    microcontroller on a physical layer.

#include <string>
#include <string_view>
#include <vector>

#include "alfred/model.hpp"

namespace alfred {

std::vector<std::string> fixture_names();

/// Source text of a fixture; throws ModelError for an unknown name.
std::string_view fixture_text(std::string_view name);

/// Parsed and validated fixture; throws ModelError for an unknown name.
ArchitectureModel load_fixture(std::string_view name);

}  // namespace alfred
