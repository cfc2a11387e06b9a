#pragma once

#include "config.hpp"
#include "report.hpp"

namespace vctool {

// Throws ConfigError for input problems discovered while running (an
// unreadable fit input, an unknown verify case).
Report execute(const RunConfig& c);

} // namespace vctool
