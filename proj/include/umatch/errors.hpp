#pragma once

#include <stdexcept>
#include <string>

namespace umatch {

// Bad input from the caller: wrong shape, foreign handle, malformed file, ...
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero in prime field") {}
};

// Raised when an invariant that should hold by construction is violated.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace umatch
