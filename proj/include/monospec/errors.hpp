#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace monospec {

// Error taxonomy shared by all modules. The CLI maps these onto distinct
// exit codes; library code throws and never calls exit().
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// Key-material validation failures.
struct KeyError : Error {
    using Error::Error;
};

struct UnsupportedRuleError : KeyError {
    using KeyError::KeyError;
};

struct DegenerateSeedError : KeyError {
    using KeyError::KeyError;
};

struct NonMaximalError : KeyError {
    using KeyError::KeyError;
};

struct CapabilityError : KeyError {
    using KeyError::KeyError;
};

// Numerical blow-up. Carries the step index where the state left the
// finite range; keystreams must fail loudly rather than clamp.
struct DivergenceError : Error {
    DivergenceError(const std::string& what, std::size_t step)
        : Error(what + " at step " + std::to_string(step)), step_index(step) {}
    std::size_t step_index;
};

struct DegenerateInputError : Error {
    using Error::Error;
};

struct MissingChannelError : Error {
    using Error::Error;
};

}  // namespace monospec
