#pragma once

#include <ostream>

namespace rebgk_tool {

/// Runs the built-in Bessel and solver property suites, printing one
/// PASS/FAIL line per check. Returns the number of failed checks.
int run_selfcheck(std::ostream& os);

}  // namespace rebgk_tool
