#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aquanim/blocks.hpp"
#include "aquanim/chart_models.hpp"
#include "aquanim/geometry.hpp"
#include "aquanim/interpolators.hpp"
#include "aquanim/palette.hpp"

namespace aquanim {

enum class StageKind {
    ViewChange,
    FillEmptyTinted,
    RescaleTinted,
    BlockApplication,
    SegmentTransferSequence,
    LayoutGap,
    Recolor,
    Hold,
};

std::string_view to_string(StageKind kind);

/// One phase of a staged transition. `render` receives the stage-local linear
/// time and applies easing itself.
struct Stage {
    StageKind kind = StageKind::BlockApplication;
    double duration_weight = 1.0;
    bool conserving = true;  // false only for tinted fill/empty and rescale phases
    std::string label;
    std::function<Frame(TimeParam)> render;
};

/// Immutable after planning; evaluate() is safe to call concurrently.
struct TransitionScript {
    std::string kind;
    std::vector<Stage> stages;
    Palette palette;
    Frame initial;
    Frame final;
    /// Set when tinted stages mirror deviations of the total liquid area from it.
    std::optional<double> nominal_area;
};

struct StageLocation {
    std::size_t index = 0;
    double local = 0.0;
};

/// Global t maps onto stages in proportion to their duration weights.
StageLocation locate(const TransitionScript& script, TimeParam t);
Frame evaluate(const TransitionScript& script, TimeParam t);
Frame evaluate_stage(const TransitionScript& script, std::size_t stage, TimeParam local);

/// Plays `script` backwards: evaluate(reversed(s), t) == evaluate(s, 1 - t).
TransitionScript reversed(const TransitionScript& script);

/// Pan/zoom between two windows; `content` stays fixed in chart space.
Stage plan_view_change(const Rect& from_viewport, const Rect& to_viewport,
                       std::vector<ScenePrimitive> content, double weight = 1.0);

// ─── planners ────────────────────────────────────────────────────────────────

/// Single-rectangle reshape, staged per reshape_phases.
TransitionScript plan_reshape(const Rect& init, const Rect& final, const Palette& palette = {},
                              std::optional<Staging> staging = std::nullopt);

/// Filtering change of a histogram given per-bin counts on a shared binning.
/// Throws Error(DimensionMismatch), Error(EmptyData).
TransitionScript plan_histogram_data_change(std::span<const double> old_counts,
                                            std::span<const double> new_counts, double lo,
                                            double hi, const Palette& palette = {});

/// Throws Error(RangeMismatch) when the data ranges differ.
TransitionScript plan_histogram_rebin(const Histogram& h_old, const Histogram& h_new,
                                      const Palette& palette = {});

/// Neighbor-averaging variant; `steps` iterates, smoothing weight `alpha`.
TransitionScript plan_histogram_rebin_diffusive(const Histogram& h_old, const Histogram& h_new,
                                                std::size_t steps, double alpha = 0.5,
                                                const Palette& palette = {});

/// Drains the selected bars into a bottom band. With `round_trip` the script
/// continues with a hold and the reverse path back to the original chart.
/// Throws Error(EmptySelection).
TransitionScript plan_proportion_tip(const Histogram& h, std::span<const std::size_t> selected_bins,
                                     bool round_trip = false, const Palette& palette = {});

/// Throws Error(UnknownLevel).
TransitionScript plan_stacked_vertical_reorder(const StackedBarChart& chart,
                                               std::string_view level,
                                               const Palette& palette = {});

/// Throws Error(UnknownCategory), Error(InvalidPosition).
TransitionScript plan_stacked_horizontal_reorder(const StackedBarChart& chart,
                                                 std::string_view moving,
                                                 std::size_t target_position,
                                                 const Palette& palette = {});

TransitionScript plan_fluctuation_to_mosaic(const ConfusionMatrix& cm, const Palette& palette = {},
                                            double grid_cell_size = 1.0);

// ─── helpers shared with tests ───────────────────────────────────────────────

/// One neighbor-averaging pass with reflecting boundaries:
/// l_i <- (1-alpha) l_i + alpha (l_{i-1} + l_{i+1}) / 2.
std::vector<double> diffusion_step(std::span<const double> levels, double alpha);

/// Tint blend fraction for a transient total area; 0 when |area - nominal| <= 1e-9.
double tint_fraction(double area, double nominal, double peak_area);

inline constexpr double kMaxTint = 0.5;

/// Test hook: scales the height of every rect of `liquid` (first liquid met when
/// empty) by `factor` inside one stage (the first main conserving stage when unset).
TransitionScript corrupt_liquid(TransitionScript script, std::string liquid, double factor,
                                std::optional<std::size_t> stage = std::nullopt);

}  // namespace aquanim
