#pragma once

#include <stdexcept>
#include <string>

namespace ldsym {

// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
    InvalidInput,      // unreadable / malformed image or data file
    Config,            // parameter outside its module's preconditions
    NoEvidence,        // featureless image, all-zero weights, empty grid
    DegeneratePair,    // coincident points handed to triangulate
    DegenerateExtent,  // zero-length axis
    InvalidBenchmark,  // evaluation without any ground truth
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace ldsym
