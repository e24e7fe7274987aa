#pragma once

#include <ostream>

namespace smba {

/// Quick invariant sweep used by `smba selftest`: smoothing sandwich,
/// gradient checks, subproblem exactness, schedule bounds and a toy solve.
/// Prints one line per check; returns true when all pass.
bool run_self_checks(std::ostream& out);

}  // namespace smba
