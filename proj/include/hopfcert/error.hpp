#pragma once

#include <stdexcept>
#include <string>

namespace hopfcert {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad field parameters, subgroup specs, incompatible kinds.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed (order mismatch, method disagreement, ...).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// A configured resource bound (enumeration size, loop count) was exceeded.
class BoundExceeded : public Error {
public:
    using Error::Error;
};

/// A group cache file failed validation.
class CacheIntegrityError : public Error {
public:
    using Error::Error;
};

}  // namespace hopfcert
