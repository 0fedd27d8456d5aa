#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alfred::cli {

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 when a pipeline stage
/// (parse, validation, weaving, synthesis, analysis) fails and 2 on usage
/// errors, including unreadable input files.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace alfred::cli
