#pragma once

#include <stdexcept>
#include <string>

namespace charsparse {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed argument: wrong prime power, out-of-range size, bad flag combination.
struct invalid_parameter_error : error {
    using error::error;
};

// Arguments are well-formed but the operation is not defined there
// (e.g. inverting zero, torus order of a non-squarefree polynomial).
struct domain_error : error {
    using error::error;
};

// The computation would exceed an explicit resource cap.
struct budget_error : error {
    using error::error;
};

// A stated mathematical precondition does not hold for this input.
struct precondition_error : error {
    using error::error;
};

// A loaded or constructed object failed a consistency check.
// The message names the first violated invariant.
struct validation_error : error {
    using error::error;
};

// The requested combination (family kind, group case, ...) is not supported.
struct unsupported_error : error {
    using error::error;
};

}  // namespace charsparse
