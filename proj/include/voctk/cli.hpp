#pragma once

namespace voctk {

// Dispatches the toolkit subcommands. Returns the process exit code:
// 0 success, 1 validation/usage error, 2 I/O or numeric failure.
// Results go to stdout (or --out files); diagnostics go to stderr.
int run_cli(int argc, const char* const* argv);

} // namespace voctk
