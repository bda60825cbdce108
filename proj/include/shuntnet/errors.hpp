#pragma once

#include <stdexcept>

namespace shuntnet {

// Scenario or file contents could not be parsed.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A model or network violates a structural invariant (dimensions, symmetry,
// definiteness, localization structure).
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Synthesis cannot proceed (uncontrollable or rigid target, singular
// internal completion, inconsistent configuration).
class SynthesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical routine failed to converge or produced non-finite values.
class NumericsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem read or write failure.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace shuntnet
