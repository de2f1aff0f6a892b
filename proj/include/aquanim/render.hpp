#pragma once

#include <span>
#include <string>
#include <vector>

#include "aquanim/geometry.hpp"
#include "aquanim/transitions.hpp"

namespace aquanim {

struct RenderConfig {
    int fps = 30;
    double duration = 2.0;  // seconds
    int width = 800;
    int height = 600;
    int precision = 6;

    /// Throws Error(ValidationError) unless fps * duration >= 2 and sizes are positive.
    void validate() const;
    std::size_t frame_count() const;
};

/// round(fps * duration) + 1 frames at t = i / (N - 1).
std::vector<Frame> sample_frames(const TransitionScript& script, const RenderConfig& cfg);

/// Fixed-precision decimal with trailing zeros stripped and no negative zero.
std::string format_number(double value, int precision);

/// Uniform chart-to-pixel transform: the viewport is scaled to fit the pixel box,
/// centered and letterboxed; y is flipped.
struct PixelMap {
    double scale = 1.0;
    double offset_x = 0.0;
    double offset_y = 0.0;
    double view_x_min = 0.0;
    double view_y_max = 0.0;

    static PixelMap fit(const Rect& viewport, int width, int height);
    Point to_pixel(Point chart) const;
    Rect to_pixel(const Rect& chart) const;  // pixel rect with y_min at the top
};

std::string emit_svg(const Frame& frame, const RenderConfig& cfg);
std::string emit_animated_svg(std::span<const Frame> frames, const RenderConfig& cfg);

/// Keyframe wire document: a header line, one frame per line, then the footer.
std::string emit_keyframes_doc(std::span<const Frame> frames, const RenderConfig& cfg);

}  // namespace aquanim
