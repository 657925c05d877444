#pragma once

#include <stdexcept>
#include <string>

namespace preisach {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed files, or mismatched supports.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A query line or value misses the memory interface.
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

/// The weighting support does not meet the relay quadrant {alpha >= 0, beta <= 0}.
class EmptyIntersectionError : public Error {
public:
    using Error::Error;
};

/// Initial interface or region violates the monotone-remnant hypotheses.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

/// Sector bounds vanish, so no gain can be derived.
class DegenerateBoundsError : public Error {
public:
    using Error::Error;
};

}  // namespace preisach
