#pragma once

namespace speclab::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, config_error = 2, solver_error = 3 };

/// Entry point of the `speclab` tool: report, sweep, verify, optimize.
int run(int argc, char** argv);

}  // namespace speclab::cli
