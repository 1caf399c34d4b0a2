#pragma once

#include <stdexcept>
#include <string>

namespace transmeter {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Tensor or vector dimensions do not line up.
struct ShapeError : Error {
    using Error::Error;
};

// A precondition on an argument value was violated.
struct InvalidArgument : Error {
    using Error::Error;
};

// Batch-norm asked to normalize a train-mode batch of fewer than two rows.
struct InvalidBatch : Error {
    using Error::Error;
};

// An operation was called out of order, e.g. backward before forward.
struct StateError : Error {
    using Error::Error;
};

// A file (CSV, registry, checkpoint, manifest) could not be read or parsed.
struct LoadError : Error {
    using Error::Error;
};

// Training data cannot support the requested fit (single class, too few rows).
struct DegenerateData : Error {
    using Error::Error;
};

// A score is mathematically undefined for the given inputs (acc_0 == 0).
struct UndefinedScore : Error {
    using Error::Error;
};

// A NaN or Inf appeared where the engine guarantees finite values.
struct NumericError : Error {
    using Error::Error;
};

}  // namespace transmeter
