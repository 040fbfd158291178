#pragma once

#include <string>
#include <vector>

namespace ipt {

/// Command-line entry point. Subcommands: solve, solve-one, refine, scan,
/// rs-check, gen, bench. Returns 0 on success/convergence, 2 when a solver
/// finishes without converging, 1 on usage or I/O errors.
int cli_main(const std::vector<std::string>& args);

}  // namespace ipt
