#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "negw/weights.hpp"

namespace negw::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kNumericalError = 2 };

/// Parses the `index:value` override grammar. Throws UsageError.
NegativeOverride parse_override(std::string_view text);

/// Parses a list of overrides, rejecting repeated edge indices.
std::vector<NegativeOverride> parse_overrides(const std::vector<std::string>& items);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace negw::cli
