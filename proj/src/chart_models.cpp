#include "aquanim/chart_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "aquanim/error.hpp"

namespace aquanim {

namespace {

constexpr double kUnitAreaTolerance = 1e-9;

[[noreturn]] void invalid(const std::string& what) {
    throw Error(ErrorCode::ValidationError, what);
}

}  // namespace

// ─── histograms ──────────────────────────────────────────────────────────────

double Histogram::area() const {
    double a = 0.0;
    for (std::size_t i = 0; i < densities.size(); ++i) {
        a += densities[i] * (edges[i + 1] - edges[i]);
    }
    return a;
}

double Histogram::max_density() const {
    return densities.empty() ? 0.0 : *std::max_element(densities.begin(), densities.end());
}

Histogram make_histogram(std::vector<double> edges, std::vector<double> densities) {
    if (edges.size() < 2 || edges.size() != densities.size() + 1) {
        invalid("a histogram needs n+1 edges for n >= 1 densities");
    }
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i] < edges[i + 1]) || !std::isfinite(edges[i + 1])) {
            invalid("histogram edges must be finite and strictly increasing");
        }
    }
    const double width = (edges.back() - edges.front()) / static_cast<double>(densities.size());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (std::abs((edges[i + 1] - edges[i]) - width) > 1e-9 * width) {
            invalid("histogram bins must have equal widths");
        }
    }
    for (double d : densities) {
        if (!(d >= 0.0) || !std::isfinite(d)) invalid("histogram densities must be non-negative");
    }
    Histogram h{std::move(edges), std::move(densities)};
    if (std::abs(h.area() - 1.0) > kUnitAreaTolerance) {
        invalid("histogram bars must have total area 1, got " + std::to_string(h.area()));
    }
    return h;
}

std::vector<double> equal_width_edges(std::size_t bins, double lo, double hi) {
    if (bins == 0) invalid("bin count must be at least 1");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        invalid("histogram range needs lo < hi");
    }
    std::vector<double> edges(bins + 1);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i < bins; ++i) edges[i] = lo + static_cast<double>(i) * width;
    edges[bins] = hi;
    return edges;
}

std::vector<double> bin_counts(std::span<const double> values, std::size_t bin_count, double lo,
                               double hi) {
    const auto edges = equal_width_edges(bin_count, lo, hi);
    if (values.empty()) throw Error(ErrorCode::EmptyData, "a histogram needs at least one value");
    std::vector<double> counts(bin_count, 0.0);
    const double width = (hi - lo) / static_cast<double>(bin_count);
    for (double v : values) {
        if (!(v >= lo && v <= hi)) {
            throw Error(ErrorCode::ValueOutOfRange, "value " + std::to_string(v) +
                                                        " lies outside the range [" +
                                                        std::to_string(lo) + ", " +
                                                        std::to_string(hi) + "]");
        }
        auto i = static_cast<std::size_t>(
            std::min(std::floor((v - lo) / width), static_cast<double>(bin_count - 1)));
        // Guard against division rounding across an edge.
        while (i > 0 && v < edges[i]) --i;
        while (i + 1 < bin_count && v >= edges[i + 1]) ++i;
        counts[i] += 1.0;
    }
    return counts;
}

Histogram histogram_from_counts(std::span<const double> counts, double lo, double hi) {
    auto edges = equal_width_edges(counts.size(), lo, hi);
    double total = 0.0;
    for (double c : counts) {
        if (!(c >= 0.0) || !std::isfinite(c)) invalid("bin counts must be non-negative");
        total += c;
    }
    if (!(total > 0.0)) throw Error(ErrorCode::EmptyData, "bin counts sum to zero");
    const double width = (hi - lo) / static_cast<double>(counts.size());
    std::vector<double> densities;
    densities.reserve(counts.size());
    for (double c : counts) densities.push_back(c / (total * width));
    return Histogram{std::move(edges), std::move(densities)};
}

Histogram histogram_from_samples(std::span<const double> values, std::size_t bin_count, double lo,
                                 double hi) {
    const auto counts = bin_counts(values, bin_count, lo, hi);
    return histogram_from_counts(counts, lo, hi);
}

Histogram unit_width(const Histogram& h) {
    const double span = h.hi() - h.lo();
    Histogram out;
    for (double e : h.edges) out.edges.push_back((e - h.lo()) / span);
    out.edges.front() = 0.0;
    out.edges.back() = 1.0;
    for (double d : h.densities) out.densities.push_back(d * span);
    return out;
}

// ─── stacked bars ────────────────────────────────────────────────────────────

void StackedBarChart::validate() const {
    if (categories.empty() || levels.empty()) invalid("a stacked bar chart needs categories and levels");
    std::set<std::string_view> seen;
    for (const auto& c : categories) {
        if (!seen.insert(c).second) invalid("duplicate category label '" + c + "'");
    }
    seen.clear();
    for (const auto& l : levels) {
        if (!seen.insert(l.label).second) invalid("duplicate level label '" + l.label + "'");
    }
    if (heights.size() != categories.size()) invalid("one height row per category is required");
    for (const auto& row : heights) {
        if (row.size() != levels.size()) invalid("one height per level is required");
        for (double h : row) {
            if (!(h >= 0.0) || !std::isfinite(h)) invalid("stacked heights must be non-negative");
        }
    }
    if (!(bar_width > 0.0) || !(gap >= 0.0)) invalid("bar width must be positive, gap non-negative");
}

std::size_t StackedBarChart::category_index(std::string_view label) const {
    auto it = std::find(categories.begin(), categories.end(), label);
    return it == categories.end() ? std::string_view::npos
                                  : static_cast<std::size_t>(it - categories.begin());
}

std::size_t StackedBarChart::level_index(std::string_view label) const {
    auto it = std::find_if(levels.begin(), levels.end(),
                           [&](const StackLevel& l) { return l.label == label; });
    return it == levels.end() ? std::string_view::npos
                              : static_cast<std::size_t>(it - levels.begin());
}

double StackedBarChart::bar_height(std::size_t category) const {
    return std::accumulate(heights[category].begin(), heights[category].end(), 0.0);
}

std::string segment_liquid(std::string_view category, std::string_view level) {
    return "seg/" + std::string(category) + "/" + std::string(level);
}

// ─── confusion matrices ──────────────────────────────────────────────────────

std::int64_t ConfusionMatrix::total() const {
    std::int64_t t = 0;
    for (const auto& row : counts) t = std::accumulate(row.begin(), row.end(), t);
    return t;
}

ConfusionMatrix make_confusion_matrix(std::vector<std::string> labels,
                                      std::vector<std::vector<std::int64_t>> counts) {
    if (labels.empty()) invalid("a confusion matrix needs at least one class");
    std::set<std::string_view> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) invalid("duplicate class label '" + l + "'");
    }
    if (counts.size() != labels.size()) invalid("confusion matrix must be square (rows)");
    for (const auto& row : counts) {
        if (row.size() != labels.size()) invalid("confusion matrix must be square (columns)");
        for (auto c : row) {
            if (c < 0) invalid("confusion counts must be non-negative");
        }
    }
    ConfusionMatrix cm{std::move(labels), std::move(counts)};
    if (cm.total() <= 0) throw Error(ErrorCode::EmptyMatrix, "confusion matrix total is zero");
    return cm;
}

ProbabilityTable probability_table(const ConfusionMatrix& cm) {
    const std::size_t k = cm.classes();
    const auto total_count = cm.total();
    if (total_count <= 0) throw Error(ErrorCode::EmptyMatrix, "confusion matrix total is zero");
    const double total = static_cast<double>(total_count);

    std::vector<std::int64_t> row_sum(k, 0);
    std::vector<std::int64_t> col_sum(k, 0);
    for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t o = 0; o < k; ++o) {
            row_sum[p] += cm.counts[p][o];
            col_sum[o] += cm.counts[p][o];
        }
    }

    ProbabilityTable pt;
    pt.labels = cm.labels;
    pt.joint.assign(k, std::vector<double>(k, 0.0));
    pt.cond_obs_given_pred.assign(k, std::vector<double>(k, 0.0));
    pt.cond_pred_given_obs.assign(k, std::vector<double>(k, 0.0));
    pt.marginal_pred.resize(k);
    pt.marginal_obs.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        pt.marginal_pred[i] = static_cast<double>(row_sum[i]) / total;
        pt.marginal_obs[i] = static_cast<double>(col_sum[i]) / total;
    }
    for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t o = 0; o < k; ++o) {
            const double c = static_cast<double>(cm.counts[p][o]);
            pt.joint[p][o] = c / total;
            // Zero marginals leave the conditionals at 0.
            if (row_sum[p] > 0) pt.cond_obs_given_pred[p][o] = c / static_cast<double>(row_sum[p]);
            if (col_sum[o] > 0) pt.cond_pred_given_obs[p][o] = c / static_cast<double>(col_sum[o]);
        }
    }
    return pt;
}

std::string joint_liquid(std::string_view predicted, std::string_view observed) {
    return "joint/" + std::string(predicted) + "/" + std::string(observed);
}

namespace {

Rect centered_square(const Rect& slot, double side) {
    const double cx = slot.center_x();
    const double cy = slot.center_y();
    const double h = 0.5 * side;
    return {cx - h, cx + h, cy - h, cy + h};
}

}  // namespace

FluctuationLayout fluctuation_layout(const ProbabilityTable& pt, double grid_cell_size) {
    const std::size_t k = pt.classes();
    const double g = grid_cell_size;
    const double kg = static_cast<double>(k) * g;

    FluctuationLayout out;
    out.cell_size = g;
    out.slots.assign(k, std::vector<Rect>(k));
    out.cells.assign(k, std::vector<Rect>(k));

    // Bottom margin row occupies y in [0, g]; grid row p sits above it, top row first.
    auto row_y = [&](std::size_t p) {
        const double top = static_cast<double>(k - p + 1) * g;
        return std::pair{top - g, top};
    };
    for (std::size_t p = 0; p < k; ++p) {
        const auto [y0, y1] = row_y(p);
        for (std::size_t o = 0; o < k; ++o) {
            const double x0 = static_cast<double>(o) * g;
            out.slots[p][o] = {x0, x0 + g, y0, y1};
            out.cells[p][o] = centered_square(out.slots[p][o], std::sqrt(pt.joint[p][o]));
        }
    }
    out.grid = {0.0, kg, g, kg + g};

    // The staging strip must hold a unit band and every row of squares laid side
    // by side without overlap while they turn into mosaic segments.
    double packing = 1.0;
    for (std::size_t p = 0; p < k; ++p) {
        double row = 0.0;
        for (std::size_t o = 0; o < k; ++o) {
            row += std::max(std::sqrt(pt.joint[p][o]), pt.cond_obs_given_pred[p][o]);
        }
        packing = std::max(packing, row);
    }
    const double inset = 0.1 * g;
    const double strip_width = std::max(g, packing + 2.0 * inset);
    out.staging_strip = {kg, kg + strip_width, g, kg + g};
    out.band_origin_x = kg + inset;

    const double mx0 = kg + strip_width;
    out.pred_margin.resize(k);
    out.obs_margin.resize(k);
    for (std::size_t p = 0; p < k; ++p) {
        const auto [y0, y1] = row_y(p);
        out.pred_margin[p] = centered_square({mx0, mx0 + g, y0, y1}, std::sqrt(pt.marginal_pred[p]));
    }
    for (std::size_t o = 0; o < k; ++o) {
        const double x0 = static_cast<double>(o) * g;
        out.obs_margin[o] = centered_square({x0, x0 + g, 0.0, g}, std::sqrt(pt.marginal_obs[o]));
    }
    out.reference = centered_square({mx0, mx0 + g, 0.0, g}, 1.0);
    out.bounds = bounding_box({0.0, mx0 + g, 0.0, kg + g}, out.reference);
    return out;
}

MosaicLayout mosaic_layout(const ProbabilityTable& pt) {
    const std::size_t k = pt.classes();
    MosaicLayout out;
    out.bands.resize(k);
    out.segments.assign(k, std::vector<Rect>(k));
    // Stack from the bottom so the last band rests exactly on y = 0.
    double y = 0.0;
    for (std::size_t i = k; i-- > 0;) {
        const double top = y + pt.marginal_pred[i];
        out.bands[i] = {0.0, 1.0, y, top};
        double x = 0.0;
        for (std::size_t o = 0; o < k; ++o) {
            const double right = x + pt.cond_obs_given_pred[i][o];
            out.segments[i][o] = {x, right, y, top};
            x = right;
        }
        y = top;
    }
    return out;
}

// ─── static frames ───────────────────────────────────────────────────────────

Rect fit_viewport(const Rect& bounds, double pad) {
    const double span = std::max({bounds.width(), bounds.height(), 1e-9});
    const double m = pad * span;
    return {bounds.x_min - m, bounds.x_max + m, bounds.y_min - m, bounds.y_max + m};
}

double default_stroke(const Rect& viewport) {
    return 0.004 * std::max(viewport.width(), viewport.height());
}

Rect histogram_bounds(const Histogram& h) {
    return {h.lo(), h.hi(), 0.0, std::max(h.max_density(), 1e-9)};
}

Frame histogram_frame(const Histogram& h, const Palette& palette) {
    return histogram_frame(h, palette, fit_viewport(histogram_bounds(h)));
}

Frame histogram_frame(const Histogram& h, const Palette& palette, const Rect& viewport,
                      std::span<const std::string> bin_liquids) {
    Frame f;
    f.viewport = viewport;
    const double sw = default_stroke(viewport);
    for (std::size_t i = 0; i < h.bins(); ++i) {
        if (h.densities[i] <= 0.0) continue;
        f.primitives.push_back(ScenePrimitive::filled(
            {h.edges[i], h.edges[i + 1], 0.0, h.densities[i]}, palette.liquid,
            bin_liquids.empty() ? std::string("data") : bin_liquids[i],
            palette.background, sw));
    }
    f.primitives.push_back(ScenePrimitive::line({h.lo(), 0.0}, {h.hi(), 0.0}, palette.label, sw));
    return f;
}

double bar_x(const StackedBarChart& chart, double slot) {
    return slot * chart.pitch() + 0.5 * chart.gap;
}

namespace {

double max_bar_height(const StackedBarChart& chart) {
    double m = 0.0;
    for (std::size_t c = 0; c < chart.categories.size(); ++c) m = std::max(m, chart.bar_height(c));
    return std::max(m, 1e-9);
}

}  // namespace

Rect stacked_bounds(const StackedBarChart& chart, std::size_t slots) {
    const double h = max_bar_height(chart);
    return {0.0, static_cast<double>(slots) * chart.pitch(), -0.12 * h, h};
}

Frame stacked_bar_frame(const StackedBarChart& chart, const Palette& palette) {
    chart.validate();
    Frame f;
    f.viewport = fit_viewport(stacked_bounds(chart, chart.categories.size()));
    const double label_y = -0.08 * max_bar_height(chart);
    for (std::size_t c = 0; c < chart.categories.size(); ++c) {
        const double x0 = bar_x(chart, static_cast<double>(c));
        double y = 0.0;
        for (std::size_t l = 0; l < chart.levels.size(); ++l) {
            const double top = y + chart.heights[c][l];
            if (chart.heights[c][l] > 0.0) {
                f.primitives.push_back(ScenePrimitive::filled(
                    {x0, x0 + chart.bar_width, y, top}, chart.levels[l].color,
                    segment_liquid(chart.categories[c], chart.levels[l].label)));
            }
            y = top;
        }
        f.primitives.push_back(ScenePrimitive::label({x0 + 0.5 * chart.bar_width, label_y},
                                                     chart.categories[c], palette.label));
    }
    return f;
}

std::vector<ScenePrimitive> fluctuation_static_primitives(const FluctuationLayout& layout,
                                                          const ProbabilityTable& pt,
                                                          const Palette& palette) {
    const std::size_t k = pt.classes();
    const double sw = 0.03 * layout.cell_size;
    std::vector<ScenePrimitive> out;
    for (const auto& row : layout.slots) {
        for (const auto& slot : row) out.push_back(ScenePrimitive::stroked(slot, palette.grid, sw));
    }
    out.push_back(ScenePrimitive::stroked(layout.grid, palette.container, sw));
    out.push_back(
        ScenePrimitive::filled(layout.reference, palette.reference, "unit", palette.container, sw));
    for (std::size_t p = 0; p < k; ++p) {
        if (pt.marginal_pred[p] <= 0.0) continue;
        out.push_back(ScenePrimitive::filled(layout.pred_margin[p], palette.class_color(p),
                                             "marginal_pred/" + pt.labels[p]));
    }
    for (std::size_t o = 0; o < k; ++o) {
        if (pt.marginal_obs[o] <= 0.0) continue;
        out.push_back(ScenePrimitive::filled(layout.obs_margin[o], palette.background,
                                             "marginal_obs/" + pt.labels[o],
                                             palette.class_color(o), sw));
    }
    const double label_size = 0.5 * layout.cell_size;
    for (std::size_t i = 0; i < k; ++i) {
        const Rect& top_slot = layout.slots[0][i];
        out.push_back(ScenePrimitive::label({top_slot.center_x(), top_slot.y_max + 0.25 * label_size},
                                            pt.labels[i] + "o", palette.label));
        const Rect& left_slot = layout.slots[i][0];
        out.push_back(ScenePrimitive::label({left_slot.x_min - 0.5 * label_size, left_slot.center_y()},
                                            pt.labels[i] + "p", palette.label));
    }
    return out;
}

Frame fluctuation_frame(const FluctuationLayout& layout, const ProbabilityTable& pt,
                        const Palette& palette) {
    Frame f;
    Rect b = layout.bounds;
    b.x_min -= 0.6 * layout.cell_size;
    b.y_max += 0.5 * layout.cell_size;
    f.viewport = fit_viewport(b);
    f.primitives = fluctuation_static_primitives(layout, pt, palette);
    const double sw = 0.03 * layout.cell_size;
    for (std::size_t p = 0; p < pt.classes(); ++p) {
        for (std::size_t o = 0; o < pt.classes(); ++o) {
            if (pt.joint[p][o] <= 0.0) continue;
            f.primitives.push_back(ScenePrimitive::filled(
                layout.cells[p][o], palette.class_color(p), joint_liquid(pt.labels[p], pt.labels[o]),
                palette.class_color(o), sw));
        }
    }
    return f;
}

std::vector<ScenePrimitive> mosaic_primitives(const MosaicLayout& mosaic,
                                              const ProbabilityTable& pt, Point origin,
                                              const Palette& palette, double stroke_width) {
    std::vector<ScenePrimitive> out;
    for (std::size_t p = 0; p < pt.classes(); ++p) {
        for (std::size_t o = 0; o < pt.classes(); ++o) {
            if (pt.joint[p][o] <= 0.0) continue;
            const Rect& s = mosaic.segments[p][o];
            out.push_back(ScenePrimitive::filled(
                {origin.x + s.x_min, origin.x + s.x_max, origin.y + s.y_min, origin.y + s.y_max},
                palette.class_color(p), joint_liquid(pt.labels[p], pt.labels[o]),
                palette.class_color(o), stroke_width));
        }
    }
    return out;
}

Frame mosaic_frame(const MosaicLayout& mosaic, const ProbabilityTable& pt, Point origin,
                   const Palette& palette) {
    Frame f;
    f.viewport = fit_viewport({origin.x, origin.x + 1.0, origin.y, origin.y + 1.0});
    f.primitives = mosaic_primitives(mosaic, pt, origin, palette, 0.01);
    return f;
}

}  // namespace aquanim
