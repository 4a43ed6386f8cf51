#include "ekedahl/errors.hpp"

namespace ekedahl {

const char* err_name(Err e) {
    switch (e) {
        case Err::NotLatinSquare: return "NotLatinSquare";
        case Err::NotAssociative: return "NotAssociative";
        case Err::NoIdentity: return "NoIdentity";
        case Err::NotAPermutation: return "NotAPermutation";
        case Err::ClosureTooLarge: return "ClosureTooLarge";
        case Err::UnknownName: return "UnknownName";
        case Err::BadParams: return "BadParams";
        case Err::NotAHomomorphism: return "NotAHomomorphism";
        case Err::NotFinite: return "NotFinite";
        case Err::CapExceeded: return "CapExceeded";
        case Err::ExpressFailed: return "ExpressFailed";
        case Err::NotAUnit: return "NotAUnit";
        case Err::NotConverging: return "NotConverging";
        case Err::PrecisionRequired: return "PrecisionRequired";
        case Err::DimensionMismatch: return "DimensionMismatch";
        case Err::HasTorsion: return "HasTorsion";
        case Err::InsufficientPrecision: return "InsufficientPrecision";
        case Err::MissingTable: return "MissingTable";
        case Err::DegreeOutOfRange: return "DegreeOutOfRange";
        case Err::Inconsistent: return "Inconsistent";
        case Err::NegativeIndexNonzero: return "NegativeIndexNonzero";
        case Err::BadFormat: return "BadFormat";
        case Err::ValidationFailed: return "ValidationFailed";
        case Err::SyntaxError: return "SyntaxError";
        case Err::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace ekedahl
