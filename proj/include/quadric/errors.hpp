#pragma once

#include <stdexcept>
#include <string>

namespace quadric {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input files, matrix blocks, step lines, flag values.
struct ParseError : Error {
    using Error::Error;
};

// A raw Hilbert grid whose guard row/column still differ from their
// predecessors: the support does not fit inside the given rectangle.
struct StabilizationNotReached : Error {
    using Error::Error;
};

// Line-profile differencing went negative; the input was not a valid
// first difference.
struct NegativeCount : Error {
    using Error::Error;
};

// Target index of a line addition is below the current support bound.
struct IndexTooSmall : Error {
    using Error::Error;
};

// Fresh coordinate draws kept colliding with existing line coordinates.
struct CoordinateCollision : Error {
    using Error::Error;
};

struct InfeasibleDensity : Error {
    using Error::Error;
};

} // namespace quadric
