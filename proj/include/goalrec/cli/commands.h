#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace goalrec::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitParse = 2,
    kExitSolver = 3,
    kExitAllInfeasible = 4,
};

// Runs the goalrec command line (recognize, bench, gen, plan, heuristic).
// args[0] is the program name. Output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace goalrec::cli
