#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aquanim/geometry.hpp"
#include "aquanim/interpolators.hpp"
#include "aquanim/palette.hpp"

namespace aquanim {

enum class Axis { X, Y };

/// Colors and line width for the explanatory decoration drawn by blocks.
struct DecorationStyle {
    Palette palette{};
    double stroke_width = 0.02;  // chart units
};

// ─── fill / empty ────────────────────────────────────────────────────────────

/// Liquid extent along `axis`, measured from the container's low edge.
struct FillSpec {
    Rect container;
    Axis axis = Axis::Y;
    double level0 = 0.0;
    double level1 = 0.0;
};

/// Validating constructor. Throws Error(LevelOutOfRange).
FillSpec make_fill_spec(const Rect& container, Axis axis, double level0, double level1);

struct BlockFrame {
    Rect rect;
    std::vector<ScenePrimitive> decoration;
};

/// Not area-preserving on its own; only composed into balanced stages.
/// Decoration: container outline, then a target line at level1 when emptying
/// or a reminder line at level0 when filling.
BlockFrame fill_at(const FillSpec& spec, EasedTime u, const DecorationStyle& style = {});

// ─── shift / translate ───────────────────────────────────────────────────────

/// Translates `liquid` by lerp(0, offset, u) along `axis` inside a fixed
/// container. Throws Error(EscapesContainer) if the path leaves the container.
Rect shift_at(const Rect& liquid, const Rect& container, Axis axis, double offset, EasedTime u);

/// Rigid translation by lerp of the offset; used for staging moves.
Rect translate_at(const Rect& r, double dx, double dy, EasedTime u);

// ─── reshape ─────────────────────────────────────────────────────────────────

enum class ReshapeCase { Identity, Translate, L_H, L_HH, LL_H, LL_HH };
enum class Staging { Direct, TranslateThenReshape, ReshapeThenTranslate };

std::string_view to_string(ReshapeCase c);

/// Equal-area rectangle pair with the piston (L) axis chosen. Edges on the
/// piston axis move linearly in eased time; edges on the other axis are free
/// and follow the area constraint.
struct ReshapeSpec {
    Rect init;
    Rect final;
    Axis piston_axis = Axis::X;
    ReshapeCase case_code = ReshapeCase::Identity;
    Staging staging = Staging::Direct;
};

/// Throws Error(AreaMismatch) when areas differ beyond 1e-9 relative and
/// Error(DegenerateExtent) when a piston extent is at most 1e-12.
ReshapeSpec classify_reshape(const Rect& init, const Rect& final);

struct ReshapePhase {
    enum class Kind { Translate, Reshape };
    Kind kind;
    Rect from;
    Rect to;
};

/// Splits a staged spec into an optional rigid translation and a reshape with
/// fewer moving edges. Direct specs yield a single phase.
std::vector<ReshapePhase> reshape_phases(const ReshapeSpec& spec);

/// Area-preserving reshape from spec.init to spec.final (staging is applied by
/// callers through reshape_phases). Decoration: the cylinder (bounding box of
/// both rects), piston lines across the cylinder and free-surface lines.
BlockFrame reshape_at(const ReshapeSpec& spec, EasedTime u, const DecorationStyle& style = {});

/// Corner-wise linear interpolation, kept only as the non-conserving contrast.
Rect vertex_lerp(const Rect& init, const Rect& final, EasedTime u);

// ─── communicating containers ────────────────────────────────────────────────

struct TransferContainer {
    double width = 0.0;
    double level0 = 0.0;
    double level1 = 0.0;
};

class TransferSpec {
public:
    /// Throws Error(ValidationError) for non-positive widths, Error(LevelOutOfRange)
    /// for negative levels, Error(AreaMismatch) when the weighted level sums differ
    /// beyond 1e-9 relative.
    static TransferSpec create(std::vector<TransferContainer> containers);

    const std::vector<TransferContainer>& containers() const { return containers_; }
    double total_area() const { return total_area_; }

private:
    TransferSpec(std::vector<TransferContainer> c, double a)
        : containers_(std::move(c)), total_area_(a) {}

    std::vector<TransferContainer> containers_;
    double total_area_ = 0.0;
};

std::vector<double> transfer_at(const TransferSpec& spec, EasedTime u);

// ─── communicating segments ──────────────────────────────────────────────────

struct Segment {
    std::string liquid;
    double height = 0.0;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Bottom-to-top stack of liquid segments in one container.
struct SegmentStack {
    double width = 1.0;
    std::vector<Segment> segments;

    double total_height() const;
    double liquid_height(std::string_view liquid) const;
};

/// Moves the selected liquid to the bottom through hidden pipes: a new bottom
/// segment grows to u * h_sel while every original selected segment shrinks to
/// (1-u) of its height. Zero-height selected segments are dropped and adjacent
/// selected segments merged. Throws Error(UnknownLiquid).
SegmentStack segments_shift_at(const SegmentStack& stack, std::string_view selected,
                               EasedTime u);

/// Rects of a stack standing on `base_y` with its left edge at `x_min`.
std::vector<Rect> stack_rects(const SegmentStack& stack, double x_min, double base_y);

}  // namespace aquanim
