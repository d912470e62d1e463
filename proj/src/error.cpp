#include "adhesia/error.hpp"

namespace adhesia {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownAtom: return "UnknownAtom";
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::CodomainMismatch: return "CodomainMismatch";
        case ErrorCode::NotInjective: return "NotInjective";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NotAnElement: return "NotAnElement";
        case ErrorCode::NotInPullback: return "NotInPullback";
        case ErrorCode::NonInjectiveLeg: return "NonInjectiveLeg";
        case ErrorCode::SignatureMismatch: return "SignatureMismatch";
        case ErrorCode::NotInM: return "NotInM";
        case ErrorCode::StructureClash: return "StructureClash";
        case ErrorCode::MalformedCube: return "MalformedCube";
        case ErrorCode::GluingViolation: return "GluingViolation";
        case ErrorCode::NoSuchMatch: return "NoSuchMatch";
        case ErrorCode::UnknownFixture: return "UnknownFixture";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

}  // namespace adhesia
