#pragma once

#include <stdexcept>
#include <string>

namespace ekedahl {

enum class Err {
    // group construction
    NotLatinSquare,
    NotAssociative,
    NoIdentity,
    NotAPermutation,
    ClosureTooLarge,
    UnknownName,
    BadParams,
    // abelian / cohomology
    NotAHomomorphism,
    NotFinite,
    CapExceeded,
    ExpressFailed,
    // Kontsevich ring
    NotAUnit,
    NotConverging,
    PrecisionRequired,
    // cohomology tables
    DimensionMismatch,
    HasTorsion,
    InsufficientPrecision,
    MissingTable,
    DegreeOutOfRange,
    // window solver
    Inconsistent,
    NegativeIndexNonzero,
    // i/o and parsing
    BadFormat,
    ValidationFailed,
    SyntaxError,
    Internal,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
    Error(Err kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
    Err kind() const { return kind_; }

private:
    Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace ekedahl
