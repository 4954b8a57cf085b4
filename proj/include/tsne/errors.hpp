#pragma once

#include <stdexcept>
#include <string>

namespace tsne {

// Bad or malformed input: file problems, shape mismatches, invalid flags,
// violated matrix invariants. The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Computation went numerically wrong: non-finite values, unreachable search
// targets, failed checks. The CLI maps this to exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tsne
