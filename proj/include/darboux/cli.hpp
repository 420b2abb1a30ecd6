#pragma once

#include <iosfwd>

namespace darboux::cli {

/// Run the command-line frontend. Returns 0 on success, 1 on a domain error
/// (bad input data, singular matrices, invalid diagrams, ...) and 2 on a
/// usage error (unknown subcommand or flag, missing argument).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace darboux::cli
