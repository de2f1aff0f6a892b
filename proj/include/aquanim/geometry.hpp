#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aquanim {

// Chart-space coordinates; y grows upward.
struct Rect {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double center_x() const { return 0.5 * (x_min + x_max); }
    double center_y() const { return 0.5 * (y_min + y_max); }

    bool valid() const;

    friend bool operator==(const Rect&, const Rect&) = default;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// RGBA color with channels in [0,1].
struct Color {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
    double a = 1.0;

    bool valid() const;

    /// Parses "#RRGGBB" or "#RRGGBBAA". Throws Error(ParseError).
    static Color from_hex(std::string_view hex);
    /// Always "#RRGGBBAA", uppercase.
    std::string to_hex() const;

    static constexpr Color transparent() { return {0.0, 0.0, 0.0, 0.0}; }

    friend bool operator==(const Color&, const Color&) = default;
};

/// Channel-wise linear blend; fraction 0 gives `from`, 1 gives `to`.
Color blend(const Color& from, const Color& to, double fraction);

enum class PrimitiveKind { FilledRect, StrokedRect, Line, Label };

struct ScenePrimitive {
    PrimitiveKind kind = PrimitiveKind::FilledRect;
    Rect rect{};    // filled / stroked rects
    Point p0{};     // line start, label anchor
    Point p1{};     // line end
    Color fill = Color::transparent();
    Color stroke = Color::transparent();
    double stroke_width = 0.0;
    std::string text;    // labels only
    std::string liquid;  // liquid id when the primitive draws liquid; empty for decoration

    static ScenePrimitive filled(const Rect& r, const Color& fill, std::string liquid,
                                 const Color& stroke = Color::transparent(),
                                 double stroke_width = 0.0);
    static ScenePrimitive stroked(const Rect& r, const Color& stroke, double stroke_width);
    static ScenePrimitive line(Point a, Point b, const Color& stroke, double stroke_width);
    static ScenePrimitive label(Point anchor, std::string text, const Color& fill);

    bool is_liquid() const { return kind == PrimitiveKind::FilledRect && !liquid.empty(); }
};

struct Frame {
    std::vector<ScenePrimitive> primitives;  // draw order: later over earlier
    Rect viewport{0.0, 1.0, 0.0, 1.0};
    double tint = 0.0;  // global over/under-pressure blend fraction, 0 when area is nominal
};

double rect_area(const Rect& r);
double overlap_area(const Rect& a, const Rect& b);

/// Bounding box of two rects.
Rect bounding_box(const Rect& a, const Rect& b);

/// Sorted, deduplicated union of two breakpoint lists sharing their end points.
/// Throws Error(RangeMismatch) when the overall ranges differ beyond 1e-12,
/// Error(ValidationError) when an input is not strictly increasing.
std::vector<double> partition_intervals(std::span<const double> edges_a,
                                        std::span<const double> edges_b);

inline constexpr double kEdgeTolerance = 1e-12;

}  // namespace aquanim
