#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aeronav {

/// Failure categories raised by the library. The CLI maps `Io` to exit
/// status 2 and every other code to exit status 1.
enum class ErrorCode {
    UnsupportedAction,
    MalformedSegments,
    EmptyHistory,
    InvalidPolicy,
    DegenerateDistribution,
    UnknownAction,
    EmptyBatch,
    MalformedSample,
    NumericalUnderflow,
    ShapeMismatch,
    FrameOrderError,
    UnparsableAction,
    InvalidMagnitude,
    InvalidArgument,
    EmptyEvaluation,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace aeronav
