#pragma once

#include <iosfwd>

namespace levikit::tools {

// Runs one subcommand. Returns 0 on success, 1 on a domain error (error JSON
// on err) and 2 on a usage error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levikit::tools
