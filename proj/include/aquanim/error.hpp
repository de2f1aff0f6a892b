#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aquanim {

enum class ErrorCode {
    DomainError,
    DegenerateExtent,
    RangeMismatch,
    LevelOutOfRange,
    EscapesContainer,
    AreaMismatch,
    UnknownLiquid,
    EmptyData,
    ValueOutOfRange,
    EmptyMatrix,
    DimensionMismatch,
    EmptySelection,
    UnknownLevel,
    UnknownCategory,
    InvalidPosition,
    ValidationError,
    ParseError,
};

std::string_view to_string(ErrorCode code);

/// Engine error carrying a stable code. what() is "<Code>: <detail>" so the
/// code name always reaches diagnostics.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace aquanim
