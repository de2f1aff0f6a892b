#include "aquanim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "aquanim/error.hpp"

namespace aquanim {

bool Rect::valid() const {
    return std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) &&
           std::isfinite(y_max) && x_min <= x_max && y_min <= y_max;
}

bool Color::valid() const {
    auto in_unit = [](double c) { return c >= 0.0 && c <= 1.0; };
    return in_unit(r) && in_unit(g) && in_unit(b) && in_unit(a);
}

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

int to_byte(double channel) {
    return static_cast<int>(std::lround(std::clamp(channel, 0.0, 1.0) * 255.0));
}

}  // namespace

Color Color::from_hex(std::string_view hex) {
    if (hex.size() != 7 && hex.size() != 9) {
        throw Error(ErrorCode::ParseError, "color must be #RRGGBB or #RRGGBBAA, got '" +
                                               std::string(hex) + "'");
    }
    if (hex[0] != '#') {
        throw Error(ErrorCode::ParseError, "color must start with '#': '" + std::string(hex) + "'");
    }
    double channels[4] = {0.0, 0.0, 0.0, 1.0};
    for (std::size_t i = 0; i < (hex.size() - 1) / 2; ++i) {
        int hi = hex_digit(hex[1 + 2 * i]);
        int lo = hex_digit(hex[2 + 2 * i]);
        if (hi < 0 || lo < 0) {
            throw Error(ErrorCode::ParseError, "bad hex digit in color '" + std::string(hex) + "'");
        }
        channels[i] = (hi * 16 + lo) / 255.0;
    }
    return {channels[0], channels[1], channels[2], channels[3]};
}

std::string Color::to_hex() const {
    char buf[10];
    std::snprintf(buf, sizeof buf, "#%02X%02X%02X%02X", to_byte(r), to_byte(g), to_byte(b),
                  to_byte(a));
    return buf;
}

Color blend(const Color& from, const Color& to, double fraction) {
    const double f = std::clamp(fraction, 0.0, 1.0);
    auto mix = [f](double x, double y) { return (1.0 - f) * x + f * y; };
    return {mix(from.r, to.r), mix(from.g, to.g), mix(from.b, to.b), mix(from.a, to.a)};
}

ScenePrimitive ScenePrimitive::filled(const Rect& r, const Color& fill, std::string liquid,
                                      const Color& stroke, double stroke_width) {
    ScenePrimitive p;
    p.kind = PrimitiveKind::FilledRect;
    p.rect = r;
    p.fill = fill;
    p.stroke = stroke;
    p.stroke_width = stroke_width;
    p.liquid = std::move(liquid);
    return p;
}

ScenePrimitive ScenePrimitive::stroked(const Rect& r, const Color& stroke, double stroke_width) {
    ScenePrimitive p;
    p.kind = PrimitiveKind::StrokedRect;
    p.rect = r;
    p.stroke = stroke;
    p.stroke_width = stroke_width;
    return p;
}

ScenePrimitive ScenePrimitive::line(Point a, Point b, const Color& stroke, double stroke_width) {
    ScenePrimitive p;
    p.kind = PrimitiveKind::Line;
    p.p0 = a;
    p.p1 = b;
    p.stroke = stroke;
    p.stroke_width = stroke_width;
    return p;
}

ScenePrimitive ScenePrimitive::label(Point anchor, std::string text, const Color& fill) {
    ScenePrimitive p;
    p.kind = PrimitiveKind::Label;
    p.p0 = anchor;
    p.fill = fill;
    p.text = std::move(text);
    return p;
}

double rect_area(const Rect& r) { return (r.x_max - r.x_min) * (r.y_max - r.y_min); }

double overlap_area(const Rect& a, const Rect& b) {
    const double w = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    const double h = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    if (w <= 0.0 || h <= 0.0) return 0.0;
    return w * h;
}

Rect bounding_box(const Rect& a, const Rect& b) {
    return {std::min(a.x_min, b.x_min), std::max(a.x_max, b.x_max), std::min(a.y_min, b.y_min),
            std::max(a.y_max, b.y_max)};
}

namespace {

void check_breakpoints(std::span<const double> edges, const char* name) {
    if (edges.size() < 2) {
        throw Error(ErrorCode::ValidationError,
                    std::string(name) + " needs at least two breakpoints");
    }
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i] < edges[i + 1]) || !std::isfinite(edges[i + 1])) {
            throw Error(ErrorCode::ValidationError,
                        std::string(name) + " must be finite and strictly increasing");
        }
    }
}

}  // namespace

std::vector<double> partition_intervals(std::span<const double> edges_a,
                                        std::span<const double> edges_b) {
    check_breakpoints(edges_a, "edges_a");
    check_breakpoints(edges_b, "edges_b");
    if (std::abs(edges_a.front() - edges_b.front()) > kEdgeTolerance ||
        std::abs(edges_a.back() - edges_b.back()) > kEdgeTolerance) {
        throw Error(ErrorCode::RangeMismatch,
                    "both binnings must cover the same data range; got [" +
                        std::to_string(edges_a.front()) + ", " + std::to_string(edges_a.back()) +
                        "] and [" + std::to_string(edges_b.front()) + ", " +
                        std::to_string(edges_b.back()) + "]");
    }

    std::vector<double> merged;
    merged.reserve(edges_a.size() + edges_b.size());
    std::merge(edges_a.begin(), edges_a.end(), edges_b.begin(), edges_b.end(),
               std::back_inserter(merged));

    std::vector<double> out;
    out.reserve(merged.size());
    for (double e : merged) {
        if (out.empty() || e - out.back() > kEdgeTolerance) out.push_back(e);
    }
    // End points are shared; pin them to the first binning's values.
    out.front() = edges_a.front();
    out.back() = edges_a.back();
    return out;
}

}  // namespace aquanim
