#pragma once

#include <stdexcept>
#include <string>

namespace qdegen {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter is outside the domain the builders accept.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// r <= 2 or s <= 2.
class UnsupportedRank : public InvalidParameter {
public:
    using InvalidParameter::InvalidParameter;
};

/// An exact decision was requested for a spectral parameter that only
/// carries a floating value.
class InexactSpectralParam : public Error {
public:
    InexactSpectralParam()
        : Error("spectral parameter is inexact; exact classification needs "
                "rational Re(lambda) and Im(lambda) in units of pi/h") {}
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A factor of the primed-basis transform vanishes.
class PrimedBasisUndefined : public Error {
public:
    explicit PrimedBasisUndefined(std::string factor)
        : Error("primed basis undefined: factor " + factor + " vanishes"),
          factor_(std::move(factor)) {}

    const std::string& factor() const noexcept { return factor_; }

private:
    std::string factor_;
};

/// Integer parameter that is reducible but not covered by any of the
/// tabulated decompositions.
class UnclassifiedReducibleCase : public Error {
public:
    using Error::Error;
};

/// A computed quantity violates an invariant that holds for every admissible
/// input (e.g. a negative radicand for a compact matrix element).
class InternalConsistency : public Error {
public:
    using Error::Error;
};

}  // namespace qdegen
