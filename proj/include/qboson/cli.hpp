#pragma once

#include <iosfwd>

namespace qb {

/// Command-line entry point (testable; the binary's main forwards here).
/// Exit codes: 0 success / all verifications pass, 1 identity violation or
/// failed verification, 2 usage or input errors.
int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qb
