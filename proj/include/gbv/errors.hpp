#pragma once

#include <stdexcept>
#include <string>

namespace gbv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A table, cache or integer range is too small for the request.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Malformed user input: bad spec strings, duplicate pairs, bad grids.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Mathematical precondition violated (empty box, principal character, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Character theory is only implemented for odd squarefree moduli.
class UnsupportedModulusError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace gbv
