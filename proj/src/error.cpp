#include "aeronav/error.hpp"

namespace aeronav {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::UnsupportedAction: return "UnsupportedAction";
        case ErrorCode::MalformedSegments: return "MalformedSegments";
        case ErrorCode::EmptyHistory: return "EmptyHistory";
        case ErrorCode::InvalidPolicy: return "InvalidPolicy";
        case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
        case ErrorCode::UnknownAction: return "UnknownAction";
        case ErrorCode::EmptyBatch: return "EmptyBatch";
        case ErrorCode::MalformedSample: return "MalformedSample";
        case ErrorCode::NumericalUnderflow: return "NumericalUnderflow";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::FrameOrderError: return "FrameOrderError";
        case ErrorCode::UnparsableAction: return "UnparsableAction";
        case ErrorCode::InvalidMagnitude: return "InvalidMagnitude";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EmptyEvaluation: return "EmptyEvaluation";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace aeronav
