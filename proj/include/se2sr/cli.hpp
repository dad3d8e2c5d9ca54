#pragma once

// CLI entry point, callable in-process for testing.  Exit codes:
//   0  success
//   1  domain/input error (bad arguments values, malformed CSV, ...)
//   2  solver failure (no convergence)
//   64 usage error (unknown subcommand or flag)

namespace se2sr {

int run(int argc, const char* const* argv);

}  // namespace se2sr
