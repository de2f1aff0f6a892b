#pragma once

#include <filesystem>
#include <ostream>
#include <string>

namespace aquanim::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSpecError = 2;
inline constexpr int kExitEngineError = 3;
inline constexpr int kExitViolation = 4;

enum class OutputFormat { Frames, AnimatedSvg, Keyframes };

/// "frames", "animated-svg" or "keyframes"; false for anything else.
bool parse_format(const std::string& name, OutputFormat& out);

/// Frames go to numbered SVG files inside `out` (created if needed); the other
/// formats write one file at `out`.
int cmd_render(const std::filesystem::path& spec, const std::filesystem::path& out,
               OutputFormat format, std::ostream& log);

int cmd_verify(const std::filesystem::path& spec, std::size_t samples, double tolerance,
               std::ostream& log);

}  // namespace aquanim::app
