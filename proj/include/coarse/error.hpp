#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coarse {

enum class ErrorKind {
    InvalidMetric,
    SizeExceeded,
    UnknownPoint,
    DimensionMismatch,
    ConeOutOfScale,
    NotASubcomplex,
    CollarTooWide,
    Precondition,
    ScheduleExceedsSample,
    NotAGraphMetric,
    NoPathInSupport,
    EdgeOutOfScale,
    NoFundamentalCandidate,
    NotFillable,
    DimensionOverflow,
    ConfigError,
    IOFailure,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidMetric: return "InvalidMetric";
        case ErrorKind::SizeExceeded: return "SizeExceeded";
        case ErrorKind::UnknownPoint: return "UnknownPoint";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ConeOutOfScale: return "ConeOutOfScale";
        case ErrorKind::NotASubcomplex: return "NotASubcomplex";
        case ErrorKind::CollarTooWide: return "CollarTooWide";
        case ErrorKind::Precondition: return "Precondition";
        case ErrorKind::ScheduleExceedsSample: return "ScheduleExceedsSample";
        case ErrorKind::NotAGraphMetric: return "NotAGraphMetric";
        case ErrorKind::NoPathInSupport: return "NoPathInSupport";
        case ErrorKind::EdgeOutOfScale: return "EdgeOutOfScale";
        case ErrorKind::NoFundamentalCandidate: return "NoFundamentalCandidate";
        case ErrorKind::NotFillable: return "NotFillable";
        case ErrorKind::DimensionOverflow: return "DimensionOverflow";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IOFailure: return "IOFailure";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// All toolkit failures carry a kind so callers (and the CLI exit-code
/// mapping) can branch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace coarse
