#pragma once

// Command-line front end: generate -> train -> eval, plus rerun from a manifest.
// Each command writes its outputs and one manifest.<command>.json next to them.

#include <iosfwd>
#include <span>
#include <string>

namespace irisdd::cli {

inline constexpr const char* tool_version = "0.1.0";

// Directory used when --out is not given; falls back to the working directory.
inline constexpr const char* out_dir_env = "IRISDD_OUT_DIR";

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,
    exit_io = 3,
    exit_not_converged = 4,
    exit_degenerate = 5,
};

// args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace irisdd::cli
