#pragma once

#include <stdexcept>

namespace olive {

// Invalid user-supplied parameter (non-positive axis, bad segment count,
// curve parameter outside [0,1], ...).
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Mesh or curve construction failed on degenerate input geometry.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched vector or raster dimensions.
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inconsistent scene/render/dataset configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unsupported or malformed file contents.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem or stream failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace olive
