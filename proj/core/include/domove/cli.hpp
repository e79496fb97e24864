#pragma once

namespace domove {

// Entry point of the command-line tool. Subcommands: filter, dom, compare,
// hv, igd, export-mip, stats. Returns 0 on success, 1 on usage errors,
// 2 on data errors, 3 when a solver cap left a result unproven.
int cli_main(int argc, const char* const* argv);

}  // namespace domove
