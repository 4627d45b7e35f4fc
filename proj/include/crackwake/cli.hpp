#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crackwake {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

// Entry point of the command-line tool. `args` excludes the program name.
//
//   crackwake <dipole|sif|perturb|propagate|map|neutral> --config <path>
//             [--out <path>] [--pgm] [--grid NxM] [--delta <float>]
//             [--max-iter <n>] [--arrest-tol <float>] [--pair a|b]
//             [--dump-config]
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crackwake
