#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adhesia {

/// Stable error codes; the CLI reports them verbatim.
enum class ErrorCode {
    UnknownAtom,
    DomainMismatch,
    CodomainMismatch,
    NotInjective,
    ParseError,
    NotAnElement,
    NotInPullback,
    NonInjectiveLeg,
    SignatureMismatch,
    NotInM,
    StructureClash,
    MalformedCube,
    GluingViolation,
    NoSuchMatch,
    UnknownFixture,
    InvalidInput,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure with the byte offset where it happened.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error(ErrorCode::ParseError,
                message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace adhesia
