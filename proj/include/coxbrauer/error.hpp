#pragma once

#include <stdexcept>
#include <string>

namespace coxbrauer {

enum class ErrorCode {
    UnsupportedType,
    IntegralityFailure,
    BadRegime,
    NoRoot,
    NotSplit,
    InvalidSeries,
    NonIntegral,
    BadAction,
    MissingAnnotations,
    ParseError,
    FieldTooSmall,
    NotStar,
    CohomologyOutsideRange,
    TiltingFailure,
    SingularSystem,
    Mismatch,
    InvalidArgument,
};

inline const char* to_string(ErrorCode c) noexcept {
    switch (c) {
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::IntegralityFailure: return "IntegralityFailure";
    case ErrorCode::BadRegime: return "BadRegime";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::NotSplit: return "NotSplit";
    case ErrorCode::InvalidSeries: return "InvalidSeries";
    case ErrorCode::NonIntegral: return "NonIntegral";
    case ErrorCode::BadAction: return "BadAction";
    case ErrorCode::MissingAnnotations: return "MissingAnnotations";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::NotStar: return "NotStar";
    case ErrorCode::CohomologyOutsideRange: return "CohomologyOutsideRange";
    case ErrorCode::TiltingFailure: return "TiltingFailure";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::Mismatch: return "Mismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Reason attached to an invalid (type, q, ell) regime.
enum class RegimeReason { NotPrime, DividesQ, NotDividing, DividesWeylOrder, WrongOrder };

inline const char* to_string(RegimeReason r) noexcept {
    switch (r) {
    case RegimeReason::NotPrime: return "NotPrime";
    case RegimeReason::DividesQ: return "DividesQ";
    case RegimeReason::NotDividing: return "NotDividing";
    case RegimeReason::DividesWeylOrder: return "DividesWeylOrder";
    case RegimeReason::WrongOrder: return "WrongOrder";
    }
    return "Unknown";
}

class BadRegime : public Error {
public:
    BadRegime(RegimeReason reason, const std::string& what)
        : Error(ErrorCode::BadRegime, std::string(to_string(reason)) + ": " + what), reason_(reason) {}

    RegimeReason reason() const noexcept { return reason_; }

private:
    RegimeReason reason_;
};

class ParseError : public Error {
public:
    ParseError(std::string location, const std::string& what)
        : Error(ErrorCode::ParseError, "at " + location + ": " + what), location_(std::move(location)) {}

    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

class TiltingFailure : public Error {
public:
    TiltingFailure(int j, int j2, int degree, const std::string& what)
        : Error(ErrorCode::TiltingFailure, what), j_(j), j2_(j2), degree_(degree) {}

    int first() const noexcept { return j_; }
    int second() const noexcept { return j2_; }
    int degree() const noexcept { return degree_; }

private:
    int j_, j2_, degree_;
};

class Mismatch : public Error {
public:
    Mismatch(int row, int col, const std::string& what)
        : Error(ErrorCode::Mismatch, what), row_(row), col_(col) {}

    int row() const noexcept { return row_; }
    int col() const noexcept { return col_; }

private:
    int row_, col_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace coxbrauer
