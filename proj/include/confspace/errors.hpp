#ifndef CONFSPACE_ERRORS_HPP
#define CONFSPACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace confspace {

/// A numeric argument outside its documented domain (m = 0, k < 0, ...).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an operation needs a valid ring and gets one that fails validate_ring.
class RingValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed ring document (bad JSON shape, unknown names, bad rationals).
class RingFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reduced mode requested for a ring that is not a built-in CP^m, or similar.
class UnsupportedMode : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Internal grading or differential inconsistency. Always a bug, never bad input.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace confspace

#endif // CONFSPACE_ERRORS_HPP
