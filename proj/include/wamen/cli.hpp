#pragma once

#include <ostream>

namespace wamen {

/// Parses arguments, runs one command and writes its report. Returns the
/// process exit code: 0 success, 2 valid run without a result, 1 input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wamen
