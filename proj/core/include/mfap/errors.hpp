#pragma once

#include <stdexcept>
#include <string>

namespace mfap {

// Malformed textual input (function specs, g-files, CLI arguments).
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An inequality that is a proven theorem failed numerically. This always
// points at an implementation bug, never at the input.
class TheoremViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw PreconditionError(message);
}

}  // namespace mfap
