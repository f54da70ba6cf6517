#pragma once

#include <stdexcept>
#include <string>

namespace intertwine {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    /// Short machine-readable tag ("PoleError", ...), used in CLI error JSON.
    virtual const char* kind() const noexcept { return "Error"; }
};

#define INTERTWINE_DEFINE_ERROR(Name)                                  \
    class Name : public Error {                                        \
    public:                                                            \
        using Error::Error;                                            \
        const char* kind() const noexcept override { return #Name; }   \
    }

// Argument sits on (or within 1e-9 of) a gamma-function pole.
INTERTWINE_DEFINE_ERROR(PoleError);
// Argument outside the domain where the quantity is defined.
INTERTWINE_DEFINE_ERROR(DomainError);
// Coincident points where distinct ones are required.
INTERTWINE_DEFINE_ERROR(DegenerateError);
// Result would not be representable as a finite double.
INTERTWINE_DEFINE_ERROR(OverflowError);
// Mismatched dimensions, bands or grids.
INTERTWINE_DEFINE_ERROR(ShapeError);
// Malformed operator word, diagram or serialized document.
INTERTWINE_DEFINE_ERROR(StructureError);
// Requested transposition of two factors that do not commute.
INTERTWINE_DEFINE_ERROR(NonCommutingError);
// Star/triangle move requested where the factor pattern does not match.
INTERTWINE_DEFINE_ERROR(PatternError);
// Star/triangle move whose exponents do not sum to zero.
INTERTWINE_DEFINE_ERROR(ConstraintError);

#undef INTERTWINE_DEFINE_ERROR

}  // namespace intertwine
