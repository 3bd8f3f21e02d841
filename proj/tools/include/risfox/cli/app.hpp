#pragma once

#include <iosfwd>

namespace risfox::cli {

enum ExitCode { kSuccess = 0, kValidationFailed = 1, kConfigError = 2, kNonConvergence = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace risfox::cli
