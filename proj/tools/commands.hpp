#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ldsym::cli {

enum ExitCode : int {
    kOk = 0,
    kBadInput = 2,
    kBadConfig = 3,
    kNoEvidence = 4,
};

/// Runs the command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ldsym::cli
