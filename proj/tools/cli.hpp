#pragma once

#include <ostream>

namespace nilaut::cli {

// Runs one command line. Returns 0 on success, 1 when a verification fails
// and 2 on usage, parse or dimension errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nilaut::cli
