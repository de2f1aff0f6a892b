#include "aquanim/error.hpp"

namespace aquanim {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::DegenerateExtent: return "DegenerateExtent";
        case ErrorCode::RangeMismatch: return "RangeMismatch";
        case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
        case ErrorCode::EscapesContainer: return "EscapesContainer";
        case ErrorCode::AreaMismatch: return "AreaMismatch";
        case ErrorCode::UnknownLiquid: return "UnknownLiquid";
        case ErrorCode::EmptyData: return "EmptyData";
        case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
        case ErrorCode::EmptyMatrix: return "EmptyMatrix";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::EmptySelection: return "EmptySelection";
        case ErrorCode::UnknownLevel: return "UnknownLevel";
        case ErrorCode::UnknownCategory: return "UnknownCategory";
        case ErrorCode::InvalidPosition: return "InvalidPosition";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace aquanim
