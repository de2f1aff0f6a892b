#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aquanim/geometry.hpp"
#include "aquanim/palette.hpp"

namespace aquanim {

// ─── histograms ──────────────────────────────────────────────────────────────

/// Equal-width bins; bar i spans [edges[i], edges[i+1]] with height densities[i].
struct Histogram {
    std::vector<double> edges;
    std::vector<double> densities;

    std::size_t bins() const { return densities.size(); }
    double lo() const { return edges.front(); }
    double hi() const { return edges.back(); }
    double area() const;
    double max_density() const;
};

/// Validates edges (strictly increasing, equal widths within 1e-9 relative),
/// non-negative densities and unit area within 1e-9. Throws Error(ValidationError).
Histogram make_histogram(std::vector<double> edges, std::vector<double> densities);

/// lo, lo + w, ..., hi with the last edge pinned to hi.
std::vector<double> equal_width_edges(std::size_t bins, double lo, double hi);

/// Bins are [e_i, e_{i+1}); the last bin also takes values equal to hi.
/// Throws Error(EmptyData), Error(ValueOutOfRange), Error(ValidationError).
std::vector<double> bin_counts(std::span<const double> values, std::size_t bin_count, double lo,
                               double hi);

Histogram histogram_from_samples(std::span<const double> values, std::size_t bin_count, double lo,
                                 double hi);

/// Normalized histogram from per-bin counts. Throws Error(EmptyData) when the total is 0.
Histogram histogram_from_counts(std::span<const double> counts, double lo, double hi);

/// The same bars on [0,1] with densities multiplied by the range width, so
/// every bar keeps its area. Transition planners draw histograms this way.
Histogram unit_width(const Histogram& h);

// ─── stacked bars ────────────────────────────────────────────────────────────

struct StackLevel {
    std::string label;
    Color color;
};

struct StackedBarChart {
    std::vector<std::string> categories;
    std::vector<StackLevel> levels;           // bottom-to-top stacking order
    std::vector<std::vector<double>> heights;  // [category][level]
    double bar_width = 0.8;
    double gap = 0.4;

    double pitch() const { return bar_width + gap; }
    /// Throws Error(ValidationError) on negative heights, duplicate labels or
    /// shape mismatches.
    void validate() const;
    /// npos when absent.
    std::size_t category_index(std::string_view label) const;
    std::size_t level_index(std::string_view label) const;
    double bar_height(std::size_t category) const;
};

/// Liquid id of one stacked segment.
std::string segment_liquid(std::string_view category, std::string_view level);

// ─── confusion matrices ──────────────────────────────────────────────────────

/// Rows are predicted classes, columns observed classes.
struct ConfusionMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<std::int64_t>> counts;  // [predicted][observed]

    std::size_t classes() const { return labels.size(); }
    std::int64_t total() const;
};

/// Throws Error(ValidationError) for shape errors or negative cells and
/// Error(EmptyMatrix) for a zero total.
ConfusionMatrix make_confusion_matrix(std::vector<std::string> labels,
                                      std::vector<std::vector<std::int64_t>> counts);

/// All matrices are indexed [predicted][observed].
struct ProbabilityTable {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> joint;
    std::vector<double> marginal_pred;
    std::vector<double> marginal_obs;
    std::vector<std::vector<double>> cond_obs_given_pred;  // p(o|p); rows sum to 1
    std::vector<std::vector<double>> cond_pred_given_obs;  // p(p|o); columns sum to 1

    std::size_t classes() const { return labels.size(); }
};

ProbabilityTable probability_table(const ConfusionMatrix& cm);

std::string joint_liquid(std::string_view predicted, std::string_view observed);

struct FluctuationLayout {
    double cell_size = 1.0;
    std::vector<std::vector<Rect>> slots;  // grid slots [predicted][observed]
    std::vector<std::vector<Rect>> cells;  // squares, area = joint
    std::vector<Rect> pred_margin;         // right margin column, area = p(class_p)
    std::vector<Rect> obs_margin;          // bottom margin row, area = p(class_o)
    Rect reference;                        // unit square
    Rect grid;                             // inner frame
    Rect staging_strip;                    // empty column between grid and right margin
    double band_origin_x = 0.0;            // left edge of staged bands
    Rect bounds;                           // everything above
};

/// Row p of the grid is predicted class p (top row first); column o is observed class o.
FluctuationLayout fluctuation_layout(const ProbabilityTable& pt, double grid_cell_size = 1.0);

/// Unit-square mosaic. Band p is predicted class p (top band first); segment
/// (p, o) has height p(class_p) and width p(class_o | class_p).
struct MosaicLayout {
    std::vector<Rect> bands;
    std::vector<std::vector<Rect>> segments;  // [predicted][observed]
};

MosaicLayout mosaic_layout(const ProbabilityTable& pt);

// ─── static frames ───────────────────────────────────────────────────────────

/// Expands `bounds` by `pad` times its larger extent on every side.
Rect fit_viewport(const Rect& bounds, double pad = 0.05);

/// A stroke width proportional to the viewport size.
double default_stroke(const Rect& viewport);

Rect histogram_bounds(const Histogram& h);
Frame histogram_frame(const Histogram& h, const Palette& palette);
/// `bin_liquids`, when given, names the liquid of each bin (default "data").
Frame histogram_frame(const Histogram& h, const Palette& palette, const Rect& viewport,
                      std::span<const std::string> bin_liquids = {});

/// Slot-relative x of the left edge of a bar at `slot`.
double bar_x(const StackedBarChart& chart, double slot);
Rect stacked_bounds(const StackedBarChart& chart, std::size_t slots);
Frame stacked_bar_frame(const StackedBarChart& chart, const Palette& palette);

std::vector<ScenePrimitive> fluctuation_static_primitives(const FluctuationLayout& layout,
                                                          const ProbabilityTable& pt,
                                                          const Palette& palette);
Frame fluctuation_frame(const FluctuationLayout& layout, const ProbabilityTable& pt,
                        const Palette& palette);

/// Mosaic segments translated by `origin`.
std::vector<ScenePrimitive> mosaic_primitives(const MosaicLayout& mosaic,
                                              const ProbabilityTable& pt, Point origin,
                                              const Palette& palette, double stroke_width);
Frame mosaic_frame(const MosaicLayout& mosaic, const ProbabilityTable& pt, Point origin,
                   const Palette& palette);

}  // namespace aquanim
