#include "aquanim/blocks.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "aquanim/error.hpp"

namespace aquanim {

namespace {

constexpr double kAreaTolerance = 1e-9;

double lo(const Rect& r, Axis a) { return a == Axis::X ? r.x_min : r.y_min; }
double hi(const Rect& r, Axis a) { return a == Axis::X ? r.x_max : r.y_max; }
double extent(const Rect& r, Axis a) { return hi(r, a) - lo(r, a); }
Axis other(Axis a) { return a == Axis::X ? Axis::Y : Axis::X; }

Rect with_axis(Rect r, Axis a, double low, double high) {
    if (a == Axis::X) {
        r.x_min = low;
        r.x_max = high;
    } else {
        r.y_min = low;
        r.y_max = high;
    }
    return r;
}

bool contains(const Rect& outer, const Rect& inner) {
    constexpr double eps = 1e-12;
    return inner.x_min >= outer.x_min - eps && inner.x_max <= outer.x_max + eps &&
           inner.y_min >= outer.y_min - eps && inner.y_max <= outer.y_max + eps;
}

std::string fmt_rect(const Rect& r) {
    return "[" + std::to_string(r.x_min) + "," + std::to_string(r.x_max) + "]x[" +
           std::to_string(r.y_min) + "," + std::to_string(r.y_max) + "]";
}

void require_valid(const Rect& r, const char* what) {
    if (!r.valid()) {
        throw Error(ErrorCode::ValidationError,
                    std::string(what) + " is not a valid rectangle: " + fmt_rect(r));
    }
}

Rect shifted(const Rect& r, double dx, double dy) {
    return {r.x_min + dx, r.x_max + dx, r.y_min + dy, r.y_max + dy};
}

}  // namespace

// ─── fill / empty ────────────────────────────────────────────────────────────

FillSpec make_fill_spec(const Rect& container, Axis axis, double level0, double level1) {
    require_valid(container, "fill container");
    const double cap = extent(container, axis);
    auto check = [cap](double level, const char* name) {
        if (!(level >= 0.0 && level <= cap)) {
            throw Error(ErrorCode::LevelOutOfRange,
                        std::string(name) + " must stay within the container extent [0, " +
                            std::to_string(cap) + "], got " + std::to_string(level));
        }
    };
    check(level0, "level0");
    check(level1, "level1");
    return {container, axis, level0, level1};
}

BlockFrame fill_at(const FillSpec& spec, EasedTime u, const DecorationStyle& style) {
    const FillSpec s = make_fill_spec(spec.container, spec.axis, spec.level0, spec.level1);
    const double base = lo(s.container, s.axis);
    const double level = std::min(lerp(s.level0, s.level1, u), extent(s.container, s.axis));

    BlockFrame out;
    out.rect = with_axis(s.container, s.axis, base, base + level);

    const Color& outline = style.palette.container;
    out.decoration.push_back(ScenePrimitive::stroked(s.container, outline, style.stroke_width));

    auto level_line = [&](double at, const Color& c) {
        const double pos = base + at;
        if (s.axis == Axis::Y) {
            return ScenePrimitive::line({s.container.x_min, pos}, {s.container.x_max, pos}, c,
                                        style.stroke_width);
        }
        return ScenePrimitive::line({pos, s.container.y_min}, {pos, s.container.y_max}, c,
                                    style.stroke_width);
    };
    if (s.level1 < s.level0) {
        out.decoration.push_back(level_line(s.level1, style.palette.less));
    } else if (s.level1 > s.level0) {
        out.decoration.push_back(level_line(s.level0, style.palette.more));
    }
    return out;
}

// ─── shift / translate ───────────────────────────────────────────────────────

Rect shift_at(const Rect& liquid, const Rect& container, Axis axis, double offset, EasedTime u) {
    require_valid(liquid, "liquid");
    require_valid(container, "container");
    const Rect end = axis == Axis::X ? shifted(liquid, offset, 0.0) : shifted(liquid, 0.0, offset);
    // The container is convex, so the straight path stays inside iff both ends do.
    if (!contains(container, liquid) || !contains(container, end)) {
        throw Error(ErrorCode::EscapesContainer,
                    "a shifted liquid must stay inside its container " + fmt_rect(container) +
                        "; path runs from " + fmt_rect(liquid) + " to " + fmt_rect(end));
    }
    const double d = lerp(0.0, offset, u);
    return axis == Axis::X ? shifted(liquid, d, 0.0) : shifted(liquid, 0.0, d);
}

Rect translate_at(const Rect& r, double dx, double dy, EasedTime u) {
    if (u.value() == 1.0) return shifted(r, dx, dy);
    return shifted(r, lerp(0.0, dx, u), lerp(0.0, dy, u));
}

// ─── reshape ─────────────────────────────────────────────────────────────────

std::string_view to_string(ReshapeCase c) {
    switch (c) {
        case ReshapeCase::Identity: return "identity";
        case ReshapeCase::Translate: return "translate";
        case ReshapeCase::L_H: return "L.H";
        case ReshapeCase::L_HH: return "L.HH";
        case ReshapeCase::LL_H: return "LL.H";
        case ReshapeCase::LL_HH: return "LL.HH";
    }
    return "?";
}

namespace {

int moving_edges(const Rect& a, const Rect& b, Axis axis) {
    return static_cast<int>(lo(a, axis) != lo(b, axis)) +
           static_cast<int>(hi(a, axis) != hi(b, axis));
}

void check_equal_area(const Rect& init, const Rect& final) {
    const double a0 = rect_area(init);
    const double a1 = rect_area(final);
    const double scale = std::max(a0, a1);
    if (std::abs(a0 - a1) > kAreaTolerance * scale) {
        throw Error(ErrorCode::AreaMismatch,
                    "an area-preserving reshape requires equal initial and final areas; got " +
                        std::to_string(a0) + " for " + fmt_rect(init) + " and " +
                        std::to_string(a1) + " for " + fmt_rect(final));
    }
}

}  // namespace

ReshapeSpec classify_reshape(const Rect& init, const Rect& final) {
    require_valid(init, "initial rectangle");
    require_valid(final, "final rectangle");
    check_equal_area(init, final);

    ReshapeSpec spec;
    spec.init = init;
    spec.final = final;

    const int mx = moving_edges(init, final, Axis::X);
    const int my = moving_edges(init, final, Axis::Y);
    if (mx == 0 && my == 0) {
        spec.case_code = ReshapeCase::Identity;
        return spec;
    }

    // The piston axis is the one leaving fewer edges to the hyperbolic rule.
    spec.piston_axis = my <= mx ? Axis::X : Axis::Y;
    const int n_l = spec.piston_axis == Axis::X ? mx : my;
    const int n_h = spec.piston_axis == Axis::X ? my : mx;
    const Axis la = spec.piston_axis;

    if (n_h == 0 && n_l == 2 && extent(init, la) == extent(final, la)) {
        spec.case_code = ReshapeCase::Translate;
        return spec;
    }
    if (extent(init, la) <= kDegenerateExtent || extent(final, la) <= kDegenerateExtent) {
        throw Error(ErrorCode::DegenerateExtent,
                    "reshape piston extent must exceed 1e-12 at both ends (" + fmt_rect(init) +
                        " -> " + fmt_rect(final) + ")");
    }
    // Sub-tolerance extent drift with no free edge moving still needs one free edge.
    const int h = std::max(n_h, 1);
    if (n_l == 1) {
        spec.case_code = h == 1 ? ReshapeCase::L_H : ReshapeCase::L_HH;
    } else {
        spec.case_code = h == 1 ? ReshapeCase::LL_H : ReshapeCase::LL_HH;
    }
    if (n_l == 2 && n_h == 2) spec.staging = Staging::TranslateThenReshape;
    return spec;
}

std::vector<ReshapePhase> reshape_phases(const ReshapeSpec& spec) {
    using Kind = ReshapePhase::Kind;
    if (spec.case_code == ReshapeCase::Translate) {
        return {{Kind::Translate, spec.init, spec.final}};
    }
    if (spec.staging == Staging::Direct || spec.case_code == ReshapeCase::Identity) {
        return {{Kind::Reshape, spec.init, spec.final}};
    }

    // Align one corner so the remaining reshape moves only two edges; pick the
    // corner with the shortest translation (ties: lower-left first).
    const Rect& a = spec.init;
    const Rect& b = spec.final;
    const std::array<std::pair<double, double>, 4> offsets{{
        {b.x_min - a.x_min, b.y_min - a.y_min},
        {b.x_max - a.x_max, b.y_min - a.y_min},
        {b.x_min - a.x_min, b.y_max - a.y_max},
        {b.x_max - a.x_max, b.y_max - a.y_max},
    }};
    auto best = offsets.front();
    for (const auto& o : offsets) {
        if (std::hypot(o.first, o.second) < std::hypot(best.first, best.second)) best = o;
    }
    if (spec.staging == Staging::TranslateThenReshape) {
        const Rect mid = shifted(a, best.first, best.second);
        return {{Kind::Translate, a, mid}, {Kind::Reshape, mid, b}};
    }
    const Rect mid = shifted(b, -best.first, -best.second);
    return {{Kind::Reshape, a, mid}, {Kind::Translate, mid, b}};
}

BlockFrame reshape_at(const ReshapeSpec& spec, EasedTime u, const DecorationStyle& style) {
    const Rect& a = spec.init;
    const Rect& b = spec.final;
    const Axis la = spec.piston_axis;
    const Axis ha = other(la);
    const double w = u.value();

    BlockFrame out;
    if (spec.case_code == ReshapeCase::Identity) {
        out.rect = a;
        return out;
    }

    if (w == 0.0) {
        out.rect = a;
    } else if (w == 1.0) {
        out.rect = b;
    } else if (spec.case_code == ReshapeCase::Translate) {
        out.rect = {lerp(a.x_min, b.x_min, u), lerp(a.x_max, b.x_max, u),
                    lerp(a.y_min, b.y_min, u), lerp(a.y_max, b.y_max, u)};
    } else {
        const double l_lo = lerp(lo(a, la), lo(b, la), u);
        const double l_hi = lerp(hi(a, la), hi(b, la), u);
        const double free = hyperbolic_extent(rect_area(a), l_hi - l_lo);

        const bool lo_moves = lo(a, ha) != lo(b, ha);
        const bool hi_moves = hi(a, ha) != hi(b, ha);
        double h_lo = 0.0;
        double h_hi = 0.0;
        if (lo_moves && hi_moves) {
            const auto pair = centered_pair(0.5 * (lo(a, ha) + hi(a, ha)),
                                            0.5 * (lo(b, ha) + hi(b, ha)), free, u);
            h_lo = pair.lo;
            h_hi = pair.hi;
        } else if (lo_moves) {
            h_hi = hi(a, ha);
            h_lo = h_hi - free;
        } else {
            h_lo = lo(a, ha);
            h_hi = h_lo + free;
        }
        out.rect = with_axis(with_axis(a, la, l_lo, l_hi), ha, h_lo, h_hi);
    }

    if (spec.case_code == ReshapeCase::Translate) return out;

    const Rect cylinder = bounding_box(a, b);
    const double sw = style.stroke_width;
    out.decoration.push_back(ScenePrimitive::stroked(cylinder, style.palette.cylinder, sw));

    auto across = [&](Axis line_axis, double at, double from, double to, const Color& c) {
        // A line at coordinate `at` on `line_axis`, spanning [from,to] on the other axis.
        if (line_axis == Axis::X) return ScenePrimitive::line({at, from}, {at, to}, c, sw);
        return ScenePrimitive::line({from, at}, {to, at}, c, sw);
    };
    const Rect& r = out.rect;
    if (lo(a, la) != lo(b, la)) {
        out.decoration.push_back(
            across(la, lo(r, la), lo(cylinder, ha), hi(cylinder, ha), style.palette.piston));
    }
    if (hi(a, la) != hi(b, la)) {
        out.decoration.push_back(
            across(la, hi(r, la), lo(cylinder, ha), hi(cylinder, ha), style.palette.piston));
    }
    if (lo(a, ha) != lo(b, ha)) {
        out.decoration.push_back(
            across(ha, lo(r, ha), lo(r, la), hi(r, la), style.palette.free_surface));
    }
    if (hi(a, ha) != hi(b, ha)) {
        out.decoration.push_back(
            across(ha, hi(r, ha), lo(r, la), hi(r, la), style.palette.free_surface));
    }
    return out;
}

Rect vertex_lerp(const Rect& init, const Rect& final, EasedTime u) {
    return {lerp(init.x_min, final.x_min, u), lerp(init.x_max, final.x_max, u),
            lerp(init.y_min, final.y_min, u), lerp(init.y_max, final.y_max, u)};
}

// ─── communicating containers ────────────────────────────────────────────────

TransferSpec TransferSpec::create(std::vector<TransferContainer> containers) {
    if (containers.empty()) {
        throw Error(ErrorCode::ValidationError, "a transfer needs at least one container");
    }
    double a0 = 0.0;
    double a1 = 0.0;
    for (std::size_t k = 0; k < containers.size(); ++k) {
        const auto& c = containers[k];
        if (!(c.width > 0.0) || !std::isfinite(c.width)) {
            throw Error(ErrorCode::ValidationError,
                        "container " + std::to_string(k) + " width must be positive");
        }
        if (!(c.level0 >= 0.0) || !(c.level1 >= 0.0) || !std::isfinite(c.level0) ||
            !std::isfinite(c.level1)) {
            throw Error(ErrorCode::LevelOutOfRange,
                        "container " + std::to_string(k) + " levels must be non-negative");
        }
        a0 += c.width * c.level0;
        a1 += c.width * c.level1;
    }
    if (std::abs(a0 - a1) > kAreaTolerance * std::max(a0, a1)) {
        throw Error(ErrorCode::AreaMismatch,
                    "communicating containers must hold the same total area before and after "
                    "(sum of width * level): " +
                        std::to_string(a0) + " vs " + std::to_string(a1));
    }
    return TransferSpec(std::move(containers), a0);
}

std::vector<double> transfer_at(const TransferSpec& spec, EasedTime u) {
    std::vector<double> levels;
    levels.reserve(spec.containers().size());
    for (const auto& c : spec.containers()) levels.push_back(lerp(c.level0, c.level1, u));
    return levels;
}

// ─── communicating segments ──────────────────────────────────────────────────

double SegmentStack::total_height() const {
    double h = 0.0;
    for (const auto& s : segments) h += s.height;
    return h;
}

double SegmentStack::liquid_height(std::string_view liquid) const {
    double h = 0.0;
    for (const auto& s : segments) {
        if (s.liquid == liquid) h += s.height;
    }
    return h;
}

SegmentStack segments_shift_at(const SegmentStack& stack, std::string_view selected,
                               EasedTime u) {
    const bool present = std::any_of(stack.segments.begin(), stack.segments.end(),
                                     [&](const Segment& s) { return s.liquid == selected; });
    if (!present) {
        throw Error(ErrorCode::UnknownLiquid,
                    "liquid '" + std::string(selected) + "' is not part of the stack");
    }
    const double w = u.value();
    const double total = stack.liquid_height(selected);

    SegmentStack out;
    out.width = stack.width;
    auto push = [&](const Segment& s) {
        if (s.liquid == selected) {
            if (s.height == 0.0) return;
            if (!out.segments.empty() && out.segments.back().liquid == selected) {
                out.segments.back().height += s.height;
                return;
            }
        }
        out.segments.push_back(s);
    };
    push({std::string(selected), w * total});
    for (const auto& s : stack.segments) {
        push(s.liquid == selected ? Segment{s.liquid, (1.0 - w) * s.height} : s);
    }
    return out;
}

std::vector<Rect> stack_rects(const SegmentStack& stack, double x_min, double base_y) {
    std::vector<Rect> rects;
    rects.reserve(stack.segments.size());
    double y = base_y;
    for (const auto& s : stack.segments) {
        const double top = y + s.height;
        rects.push_back({x_min, x_min + stack.width, y, top});
        y = top;
    }
    return rects;
}

}  // namespace aquanim
