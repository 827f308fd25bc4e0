#ifndef ALAB_ERROR_HPP
#define ALAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace alab {

/// Base of every error raised by the library. Anything deriving from this is
/// a computation failure (bad input domain, overflow, solver breakdown).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation would produce a polynomial above the degree cap.
class DegreeCapError : public Error {
public:
    using Error::Error;
};

/// A finite input produced a non-finite intermediate or result.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Input outside the operation's domain (zero polynomial, center outside the
/// ball, t >= 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace alab

#endif
