#pragma once

namespace pbhfs {

// Subcommands gen, solve, check, metrics and compare. Returns the process
// exit status; an infeasible schedule in `check` maps to
// constraint_exit_code() of the violated constraint.
int run_cli(int argc, char** argv);

} // namespace pbhfs
