#include "aquanim/transitions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "aquanim/error.hpp"

namespace aquanim {

namespace {

constexpr double kViewWeight = 1.0;
constexpr double kMainWeight = 2.0;

Stage make_stage(StageKind kind, double weight, std::string label,
                 std::function<Frame(TimeParam)> render, bool conserving = true) {
    Stage s;
    s.kind = kind;
    s.duration_weight = weight;
    s.conserving = conserving;
    s.label = std::move(label);
    s.render = std::move(render);
    return s;
}

Rect lerp_rect(const Rect& a, const Rect& b, EasedTime u) {
    return {lerp(a.x_min, b.x_min, u), lerp(a.x_max, b.x_max, u), lerp(a.y_min, b.y_min, u),
            lerp(a.y_max, b.y_max, u)};
}

Color with_alpha(Color c, double alpha) {
    c.a *= std::clamp(alpha, 0.0, 1.0);
    return c;
}

/// Stage whose scene never changes.
Stage hold_stage(Frame frame, double weight, std::string label) {
    return make_stage(StageKind::Hold, weight, std::move(label),
                      [frame = std::move(frame)](TimeParam) { return frame; });
}

}  // namespace

std::string_view to_string(StageKind kind) {
    switch (kind) {
        case StageKind::ViewChange: return "view_change";
        case StageKind::FillEmptyTinted: return "fill_empty_tinted";
        case StageKind::RescaleTinted: return "rescale_tinted";
        case StageKind::BlockApplication: return "block_application";
        case StageKind::SegmentTransferSequence: return "segment_transfer_sequence";
        case StageKind::LayoutGap: return "layout_gap";
        case StageKind::Recolor: return "recolor";
        case StageKind::Hold: return "hold";
    }
    return "?";
}

// ─── evaluation ──────────────────────────────────────────────────────────────

StageLocation locate(const TransitionScript& script, TimeParam t) {
    const auto& stages = script.stages;
    if (stages.empty()) throw Error(ErrorCode::ValidationError, "a script needs at least one stage");
    double total = 0.0;
    for (const auto& s : stages) total += s.duration_weight;

    const double x = t.value() * total;
    if (t.value() >= 1.0) return {stages.size() - 1, 1.0};
    double start = 0.0;
    for (std::size_t k = 0; k < stages.size(); ++k) {
        const double end = start + stages[k].duration_weight;
        if (x < end || k + 1 == stages.size()) {
            return {k, std::clamp((x - start) / stages[k].duration_weight, 0.0, 1.0)};
        }
        start = end;
    }
    return {stages.size() - 1, 1.0};
}

Frame evaluate(const TransitionScript& script, TimeParam t) {
    const auto loc = locate(script, t);
    return script.stages[loc.index].render(TimeParam(loc.local));
}

Frame evaluate_stage(const TransitionScript& script, std::size_t stage, TimeParam local) {
    return script.stages.at(stage).render(local);
}

TransitionScript reversed(const TransitionScript& script) {
    TransitionScript out = script;
    std::reverse(out.stages.begin(), out.stages.end());
    for (auto& s : out.stages) {
        s.render = [render = std::move(s.render)](TimeParam t) {
            return render(TimeParam(1.0 - t.value()));
        };
    }
    std::swap(out.initial, out.final);
    return out;
}

Stage plan_view_change(const Rect& from_viewport, const Rect& to_viewport,
                       std::vector<ScenePrimitive> content, double weight) {
    for (const Rect* r : {&from_viewport, &to_viewport}) {
        if (!r->valid() || !(r->width() > 0.0) || !(r->height() > 0.0)) {
            throw Error(ErrorCode::ValidationError, "viewports need a positive extent");
        }
    }
    auto shared = std::make_shared<const std::vector<ScenePrimitive>>(std::move(content));
    return make_stage(StageKind::ViewChange, weight, "view",
                      [from_viewport, to_viewport, shared](TimeParam t) {
                          Frame f;
                          f.primitives = *shared;
                          f.viewport = lerp_rect(from_viewport, to_viewport, ease(t));
                          return f;
                      });
}

// ─── single reshape ──────────────────────────────────────────────────────────

TransitionScript plan_reshape(const Rect& init, const Rect& final, const Palette& palette,
                              std::optional<Staging> staging) {
    ReshapeSpec spec = classify_reshape(init, final);
    if (staging) spec.staging = *staging;

    const Rect viewport = fit_viewport(bounding_box(init, final), 0.1);
    DecorationStyle style{palette, default_stroke(viewport)};
    auto liquid = [&palette, sw = style.stroke_width](const Rect& r) {
        return ScenePrimitive::filled(r, palette.liquid, "liquid", palette.container, sw);
    };

    TransitionScript script;
    script.kind = "reshape";
    script.palette = palette;
    for (const auto& phase : reshape_phases(spec)) {
        if (phase.kind == ReshapePhase::Kind::Translate) {
            script.stages.push_back(make_stage(
                StageKind::BlockApplication, kMainWeight, "translate",
                [phase, viewport, liquid](TimeParam t) {
                    Frame f;
                    f.viewport = viewport;
                    f.primitives.push_back(liquid(translate_at(
                        phase.from, phase.to.x_min - phase.from.x_min,
                        phase.to.y_min - phase.from.y_min, ease(t))));
                    return f;
                }));
        } else {
            ReshapeSpec sub = classify_reshape(phase.from, phase.to);
            sub.staging = Staging::Direct;
            script.stages.push_back(make_stage(
                StageKind::BlockApplication, kMainWeight, "reshape " + std::string(to_string(sub.case_code)),
                [sub, viewport, liquid, style](TimeParam t) {
                    const auto block = reshape_at(sub, ease(t), style);
                    Frame f;
                    f.viewport = viewport;
                    f.primitives.push_back(liquid(block.rect));
                    f.primitives.insert(f.primitives.end(), block.decoration.begin(),
                                        block.decoration.end());
                    return f;
                }));
        }
    }
    script.initial.viewport = viewport;
    script.initial.primitives.push_back(liquid(init));
    script.final.viewport = viewport;
    script.final.primitives.push_back(liquid(final));
    return script;
}

// ─── histogram: data change ──────────────────────────────────────────────────

double tint_fraction(double area, double nominal, double peak_area) {
    const double dev = std::abs(area - nominal);
    if (dev <= 1e-9) return 0.0;
    const double peak = std::max(std::abs(peak_area - nominal), 1e-12);
    return std::min(1.0, dev / peak) * kMaxTint;
}

TransitionScript plan_histogram_data_change(std::span<const double> old_counts,
                                            std::span<const double> new_counts, double lo,
                                            double hi, const Palette& palette) {
    if (old_counts.size() != new_counts.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "old and new counts must use the same bins (" +
                        std::to_string(old_counts.size()) + " vs " +
                        std::to_string(new_counts.size()) + ")");
    }
    histogram_from_counts(old_counts, lo, hi);
    histogram_from_counts(new_counts, lo, hi);
    // Drawn on the unit-width axis.
    lo = 0.0;
    hi = 1.0;
    const Histogram h_old = histogram_from_counts(old_counts, lo, hi);
    const Histogram h_final = histogram_from_counts(new_counts, lo, hi);
    const double n_old = std::accumulate(old_counts.begin(), old_counts.end(), 0.0);
    const double n_new = std::accumulate(new_counts.begin(), new_counts.end(), 0.0);
    const std::size_t n = old_counts.size();
    const double width = (hi - lo) / static_cast<double>(n);

    // New counts on the old normalization: the transient, unnormalized levels.
    std::vector<double> raised(n);
    for (std::size_t i = 0; i < n; ++i) raised[i] = new_counts[i] / (n_old * width);
    const double peak_area = n_new / n_old;

    double top = std::max(h_old.max_density(), h_final.max_density());
    for (double d : raised) top = std::max(top, d);
    const Rect v0 = fit_viewport(histogram_bounds(h_old));
    const Rect v1 = fit_viewport(histogram_bounds(h_final));
    const Rect vu = fit_viewport({lo, hi, 0.0, top});
    const double sw = default_stroke(vu);

    TransitionScript script;
    script.kind = "data_change";
    script.palette = palette;
    script.nominal_area = 1.0;
    script.initial = histogram_frame(h_old, palette, v0);
    script.final = histogram_frame(h_final, palette, v1);

    script.stages.push_back(plan_view_change(v0, vu, script.initial.primitives, kViewWeight));

    const std::vector<double> edges = h_old.edges;
    const std::vector<double> before = h_old.densities;

    script.stages.push_back(make_stage(
        StageKind::FillEmptyTinted, kMainWeight, "fill/empty",
        [=](TimeParam t) {
            const EasedTime u = ease(t);
            DecorationStyle style{palette, sw};
            std::vector<double> level(n);
            double area = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                level[i] = lerp(before[i], raised[i], u);
                area += width * level[i];
            }
            Frame f;
            f.viewport = vu;
            f.tint = tint_fraction(area, 1.0, peak_area);
            const Color gray = blend(palette.liquid, area >= 1.0 ? palette.more : palette.less, f.tint);
            std::vector<ScenePrimitive> decoration;
            for (std::size_t i = 0; i < n; ++i) {
                const double base = std::min(before[i], raised[i]);
                const double x0 = edges[i];
                const double x1 = edges[i + 1];
                if (base > 0.0) {
                    f.primitives.push_back(
                        ScenePrimitive::filled({x0, x1, 0.0, base}, gray, "data", palette.background, sw));
                }
                if (before[i] == raised[i]) continue;
                const bool filling = raised[i] > before[i];
                if (level[i] > base) {
                    f.primitives.push_back(ScenePrimitive::filled(
                        {x0, x1, base, level[i]}, filling ? palette.more : palette.less, "data",
                        palette.background, sw));
                }
                const auto spec = make_fill_spec({x0, x1, 0.0, std::max(before[i], raised[i])},
                                                 Axis::Y, before[i], raised[i]);
                auto block = fill_at(spec, u, style);
                for (auto& d : block.decoration) {
                    d.stroke = filling ? palette.more : palette.less;
                    decoration.push_back(std::move(d));
                }
            }
            f.primitives.insert(f.primitives.end(), decoration.begin(), decoration.end());
            f.primitives.push_back(ScenePrimitive::line({edges.front(), 0.0}, {edges.back(), 0.0},
                                                        palette.label, sw));
            return f;
        },
        /*conserving=*/false));

    script.stages.push_back(make_stage(
        StageKind::RescaleTinted, kMainWeight, "rescale",
        [=](TimeParam t) {
            const EasedTime u = ease(t);
            const double scale = lerp(1.0, 1.0 / peak_area, u);
            const double area = peak_area * scale;
            Frame f;
            f.viewport = vu;
            f.tint = tint_fraction(area, 1.0, peak_area);
            const Color gray = blend(palette.liquid, peak_area >= 1.0 ? palette.more : palette.less, f.tint);
            const Color added = blend(palette.more, gray, u.value());
            for (std::size_t i = 0; i < n; ++i) {
                const double base = std::min(before[i], raised[i]) * scale;
                const double x0 = edges[i];
                const double x1 = edges[i + 1];
                if (base > 0.0) {
                    f.primitives.push_back(
                        ScenePrimitive::filled({x0, x1, 0.0, base}, gray, "data", palette.background, sw));
                }
                if (raised[i] > before[i]) {
                    f.primitives.push_back(ScenePrimitive::filled(
                        {x0, x1, base, raised[i] * scale}, added, "data", palette.background, sw));
                }
            }
            f.primitives.push_back(ScenePrimitive::line({edges.front(), 0.0}, {edges.back(), 0.0},
                                                        palette.label, sw));
            return f;
        },
        /*conserving=*/false));

    script.stages.push_back(plan_view_change(vu, v1, script.final.primitives, kViewWeight));
    return script;
}

// ─── histogram: rebin ────────────────────────────────────────────────────────

namespace {

struct CellBinning {
    std::vector<double> edges;     // intersection cells
    std::vector<double> from;      // source density per cell
    std::vector<double> to;        // target density per cell
};

double density_at(const Histogram& h, double x) {
    auto it = std::upper_bound(h.edges.begin(), h.edges.end(), x);
    auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - h.edges.begin() - 1, 0));
    return h.densities[std::min(i, h.bins() - 1)];
}

CellBinning intersect(const Histogram& a, const Histogram& b) {
    CellBinning c;
    c.edges = partition_intervals(a.edges, b.edges);
    for (std::size_t i = 0; i + 1 < c.edges.size(); ++i) {
        const double mid = 0.5 * (c.edges[i] + c.edges[i + 1]);
        c.from.push_back(density_at(a, mid));
        c.to.push_back(density_at(b, mid));
    }
    return c;
}

std::vector<ScenePrimitive> contours(const Histogram& h, const Color& color, double sw) {
    std::vector<ScenePrimitive> out;
    for (std::size_t i = 0; i < h.bins(); ++i) {
        out.push_back(ScenePrimitive::stroked({h.edges[i], h.edges[i + 1], 0.0, h.densities[i]},
                                              color, sw));
    }
    return out;
}

void push_cells(Frame& f, const std::vector<double>& edges, const std::vector<double>& levels,
                const Palette& palette, double sw) {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] <= 0.0) continue;
        f.primitives.push_back(ScenePrimitive::filled({edges[i], edges[i + 1], 0.0, levels[i]},
                                                      palette.liquid, "data"));
    }
    (void)sw;
}

void check_same_range(const Histogram& a, const Histogram& b) {
    if (a.edges.size() < 2 || b.edges.size() < 2) {
        throw Error(ErrorCode::ValidationError, "histograms need at least one bin");
    }
    if (std::abs(a.lo() - b.lo()) > kEdgeTolerance || std::abs(a.hi() - b.hi()) > kEdgeTolerance) {
        throw Error(ErrorCode::RangeMismatch,
                    "rebinning keeps the data range; got [" + std::to_string(a.lo()) + ", " +
                        std::to_string(a.hi()) + "] and [" + std::to_string(b.lo()) + ", " +
                        std::to_string(b.hi()) + "]");
    }
}

/// Shared staging of both rebin variants: view fit, cell animation, view maximize.
TransitionScript rebin_script(const Histogram& h_old, const Histogram& h_new,
                              const Palette& palette, std::string kind,
                              std::function<std::vector<double>(EasedTime)> levels_at,
                              std::vector<double> cell_edges) {
    const Rect v0 = fit_viewport(histogram_bounds(h_old));
    const Rect v1 = fit_viewport(histogram_bounds(h_new));
    const Rect vu = fit_viewport(bounding_box(histogram_bounds(h_old), histogram_bounds(h_new)));
    const double sw = default_stroke(vu);

    TransitionScript script;
    script.kind = std::move(kind);
    script.palette = palette;
    script.initial = histogram_frame(h_old, palette, v0);
    script.final = histogram_frame(h_new, palette, v1);

    auto overlay = std::make_shared<std::vector<ScenePrimitive>>(
        contours(h_old, palette.source_contour, sw));
    auto target = contours(h_new, palette.target_contour, sw);
    overlay->insert(overlay->end(), target.begin(), target.end());
    overlay->push_back(
        ScenePrimitive::line({h_old.lo(), 0.0}, {h_old.hi(), 0.0}, palette.label, sw));

    script.stages.push_back(plan_view_change(v0, vu, script.initial.primitives, kViewWeight));
    script.stages.push_back(make_stage(
        StageKind::BlockApplication, kMainWeight, "rebin",
        [=, edges = std::move(cell_edges)](TimeParam t) {
            Frame f;
            f.viewport = vu;
            push_cells(f, edges, levels_at(ease(t)), palette, sw);
            f.primitives.insert(f.primitives.end(), overlay->begin(), overlay->end());
            return f;
        }));
    script.stages.push_back(plan_view_change(vu, v1, script.final.primitives, kViewWeight));
    return script;
}

}  // namespace

TransitionScript plan_histogram_rebin(const Histogram& h_old_data, const Histogram& h_new_data,
                                      const Palette& palette) {
    check_same_range(h_old_data, h_new_data);
    const Histogram h_old = unit_width(h_old_data);
    const Histogram h_new = unit_width(h_new_data);
    CellBinning cells = intersect(h_old, h_new);
    auto levels_at = [from = cells.from, to = cells.to](EasedTime u) {
        std::vector<double> out(from.size());
        for (std::size_t i = 0; i < from.size(); ++i) out[i] = lerp(from[i], to[i], u);
        return out;
    };
    return rebin_script(h_old, h_new, palette, "rebin", levels_at, std::move(cells.edges));
}

std::vector<double> diffusion_step(std::span<const double> levels, double alpha) {
    const std::size_t n = levels.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = levels[i == 0 ? 0 : i - 1];
        const double right = levels[i + 1 == n ? n - 1 : i + 1];
        out[i] = (1.0 - alpha) * levels[i] + alpha * 0.5 * (left + right);
    }
    return out;
}

TransitionScript plan_histogram_rebin_diffusive(const Histogram& h_old_data,
                                                const Histogram& h_new_data, std::size_t steps,
                                                double alpha, const Palette& palette) {
    check_same_range(h_old_data, h_new_data);
    const Histogram h_old = unit_width(h_old_data);
    const Histogram h_new = unit_width(h_new_data);
    if (steps == 0) throw Error(ErrorCode::ValidationError, "diffusive rebin needs at least one step");
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw Error(ErrorCode::ValidationError, "smoothing weight alpha must lie in [0,1]");
    }
    CellBinning cells = intersect(h_old, h_new);
    std::vector<double> widths;
    for (std::size_t i = 0; i + 1 < cells.edges.size(); ++i) {
        widths.push_back(cells.edges[i + 1] - cells.edges[i]);
    }

    // Iterates: smooth, blend toward the target with weight k/steps, renormalize.
    std::vector<std::vector<double>> iterates{cells.from};
    for (std::size_t k = 1; k <= steps; ++k) {
        auto next = diffusion_step(iterates.back(), alpha);
        const double beta = static_cast<double>(k) / static_cast<double>(steps);
        double area = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] = (1.0 - beta) * next[i] + beta * cells.to[i];
            area += widths[i] * next[i];
        }
        for (double& v : next) v /= area;
        iterates.push_back(std::move(next));
    }
    iterates.back() = cells.to;

    auto levels_at = [iterates = std::move(iterates), steps](EasedTime u) {
        const double pos = u.value() * static_cast<double>(steps);
        const auto i = std::min(static_cast<std::size_t>(pos), steps - 1);
        const double frac = pos - static_cast<double>(i);
        if (u.value() >= 1.0) return iterates.back();
        std::vector<double> out(iterates[i].size());
        for (std::size_t c = 0; c < out.size(); ++c) {
            out[c] = (1.0 - frac) * iterates[i][c] + frac * iterates[i + 1][c];
        }
        return out;
    };
    return rebin_script(h_old, h_new, palette, "rebin_diffusive", levels_at,
                        std::move(cells.edges));
}

// ─── histogram: proportion tip ───────────────────────────────────────────────

TransitionScript plan_proportion_tip(const Histogram& h_data,
                                     std::span<const std::size_t> selected_bins, bool round_trip,
                                     const Palette& palette) {
    const Histogram h = unit_width(h_data);
    if (selected_bins.empty()) {
        throw Error(ErrorCode::EmptySelection, "a proportion tip needs at least one selected bar");
    }
    const std::size_t n = h.bins();
    std::vector<bool> selected(n, false);
    for (auto i : selected_bins) {
        if (i >= n) {
            throw Error(ErrorCode::ValidationError,
                        "selected bar " + std::to_string(i) + " does not exist");
        }
        selected[i] = true;
    }
    std::vector<double> widths(n);
    double total_width = 0.0;
    double yellow_area = 0.0;
    double gray_area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        widths[i] = h.edges[i + 1] - h.edges[i];
        total_width += widths[i];
        (selected[i] ? yellow_area : gray_area) += widths[i] * h.densities[i];
    }
    const double yellow_band = yellow_area / total_width;
    const double gray_band = gray_area / total_width;

    std::vector<double> yellow0(n, 0.0);
    std::vector<double> gray0(n, 0.0);
    std::vector<TransferContainer> drain;
    std::vector<TransferContainer> level;
    for (std::size_t i = 0; i < n; ++i) {
        (selected[i] ? yellow0 : gray0)[i] = h.densities[i];
        drain.push_back({widths[i], yellow0[i], yellow_band});
        level.push_back({widths[i], gray0[i], gray_band});
    }
    const TransferSpec drain_spec = TransferSpec::create(drain);
    const TransferSpec level_spec = TransferSpec::create(level);

    std::vector<std::string> liquids(n);
    for (std::size_t i = 0; i < n; ++i) liquids[i] = selected[i] ? "selected" : "rest";

    const Rect b0 = histogram_bounds(h);
    const Rect b1{h.lo(), h.hi(), 0.0, std::max(yellow_band + gray_band, 1e-9)};
    const Rect v0 = fit_viewport(b0);
    const Rect v1 = fit_viewport(b1);
    const Rect vu = fit_viewport(bounding_box(b0, b1));
    const double sw = default_stroke(vu);
    const std::vector<double> edges = h.edges;

    auto columns = [=](const std::vector<double>& yellow, const std::vector<double>& gray,
                       const Color& yellow_color, const Color& gray_color) {
        Frame f;
        f.viewport = vu;
        for (std::size_t i = 0; i < n; ++i) {
            const double x0 = edges[i];
            const double x1 = edges[i + 1];
            if (yellow[i] > 0.0) {
                f.primitives.push_back(ScenePrimitive::filled({x0, x1, 0.0, yellow[i]}, yellow_color,
                                                              "selected", palette.background, sw));
            }
            if (gray[i] > 0.0) {
                f.primitives.push_back(ScenePrimitive::filled(
                    {x0, x1, yellow[i], yellow[i] + gray[i]}, gray_color, "rest", palette.background, sw));
            }
        }
        for (const auto& c : contours(h, palette.source_contour, sw)) f.primitives.push_back(c);
        f.primitives.push_back(
            ScenePrimitive::line({edges.front(), 0.0}, {edges.back(), 0.0}, palette.label, sw));
        return f;
    };

    TransitionScript script;
    script.kind = "proportion_tip";
    script.palette = palette;
    script.initial = histogram_frame(h, palette, v0, liquids);

    script.stages.push_back(plan_view_change(v0, vu, script.initial.primitives, kViewWeight));
    script.stages.push_back(make_stage(
        StageKind::Recolor, kViewWeight, "select",
        [=](TimeParam t) {
            Frame f = histogram_frame(h, palette, vu, liquids);
            const double u = ease(t).value();
            for (auto& p : f.primitives) {
                if (p.liquid == "selected") p.fill = blend(palette.liquid, palette.selection, u);
            }
            return f;
        }));
    script.stages.push_back(make_stage(
        StageKind::BlockApplication, kMainWeight, "drain selection",
        [=](TimeParam t) {
            return columns(transfer_at(drain_spec, ease(t)), gray0, palette.selection, palette.liquid);
        }));
    const std::vector<double> yellow1(n, yellow_band);
    script.stages.push_back(make_stage(
        StageKind::BlockApplication, kMainWeight, "equalize",
        [=](TimeParam t) {
            return columns(yellow1, transfer_at(level_spec, ease(t)), palette.selection, palette.liquid);
        }));

    Frame tip = columns(yellow1, std::vector<double>(n, gray_band), palette.selection, palette.liquid);
    tip.viewport = v1;
    // The final tip frame drops the helper contours.
    std::erase_if(tip.primitives, [](const ScenePrimitive& p) { return p.kind == PrimitiveKind::StrokedRect; });
    script.stages.push_back(plan_view_change(vu, v1, tip.primitives, kViewWeight));
    script.final = tip;

    if (round_trip) {
        TransitionScript back = reversed(script);
        script.stages.push_back(hold_stage(tip, kViewWeight, "pause"));
        for (auto& s : back.stages) script.stages.push_back(std::move(s));
        script.final = script.initial;
    }
    return script;
}

// ─── stacked bars: vertical reorder ──────────────────────────────────────────

TransitionScript plan_stacked_vertical_reorder(const StackedBarChart& chart,
                                               std::string_view level, const Palette& palette) {
    chart.validate();
    const std::size_t sel = chart.level_index(level);
    if (sel == std::string_view::npos) {
        throw Error(ErrorCode::UnknownLevel, "level '" + std::string(level) + "' is not in the legend");
    }

    StackedBarChart after = chart;
    std::rotate(after.levels.begin(), after.levels.begin() + static_cast<std::ptrdiff_t>(sel),
                after.levels.begin() + static_cast<std::ptrdiff_t>(sel) + 1);
    for (auto& row : after.heights) {
        std::rotate(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(sel),
                    row.begin() + static_cast<std::ptrdiff_t>(sel) + 1);
    }

    TransitionScript script;
    script.kind = "vertical_reorder";
    script.palette = palette;
    script.initial = stacked_bar_frame(chart, palette);
    script.final = stacked_bar_frame(after, palette);

    std::vector<SegmentStack> stacks;
    for (std::size_t c = 0; c < chart.categories.size(); ++c) {
        SegmentStack s;
        s.width = chart.bar_width;
        for (std::size_t l = 0; l < chart.levels.size(); ++l) {
            s.segments.push_back({chart.levels[l].label, chart.heights[c][l]});
        }
        stacks.push_back(std::move(s));
    }
    const Rect viewport = script.initial.viewport;
    const std::string selected(level);
    const double sw = default_stroke(viewport);
    std::vector<ScenePrimitive> labels;
    for (const auto& p : script.initial.primitives) {
        if (p.kind == PrimitiveKind::Label) labels.push_back(p);
    }

    script.stages.push_back(make_stage(
        StageKind::BlockApplication, kMainWeight, "communicating segments",
        [chart, stacks, selected, viewport, labels, palette, sw](TimeParam t) {
            const EasedTime u = ease(t);
            Frame f;
            f.viewport = viewport;
            for (std::size_t c = 0; c < stacks.size(); ++c) {
                const SegmentStack moved = stacks[c].liquid_height(selected) > 0.0
                                               ? segments_shift_at(stacks[c], selected, u)
                                               : stacks[c];
                const double x0 = bar_x(chart, static_cast<double>(c));
                const auto rects = stack_rects(moved, x0, 0.0);
                for (std::size_t s = 0; s < rects.size(); ++s) {
                    if (moved.segments[s].height <= 0.0) continue;
                    const auto l = chart.level_index(moved.segments[s].liquid);
                    const bool is_sel = moved.segments[s].liquid == selected;
                    f.primitives.push_back(ScenePrimitive::filled(
                        rects[s], chart.levels[l].color,
                        segment_liquid(chart.categories[c], moved.segments[s].liquid),
                        is_sel ? palette.segment_selection : Color::transparent(), is_sel ? sw : 0.0));
                }
            }
            f.primitives.insert(f.primitives.end(), labels.begin(), labels.end());
            return f;
        }));
    return script;
}

// ─── stacked bars: horizontal reorder ────────────────────────────────────────

TransitionScript plan_stacked_horizontal_reorder(const StackedBarChart& chart,
                                                 std::string_view moving,
                                                 std::size_t target_position,
                                                 const Palette& palette) {
    chart.validate();
    const std::size_t k = chart.categories.size();
    const std::size_t m = chart.category_index(moving);
    if (m == std::string_view::npos) {
        throw Error(ErrorCode::UnknownCategory, "category '" + std::string(moving) + "' is not on the axis");
    }
    if (target_position >= k || target_position == m) {
        throw Error(ErrorCode::InvalidPosition,
                    "target position must be a valid index different from the current one (" +
                        std::to_string(m) + "), got " + std::to_string(target_position));
    }
    const std::size_t j = target_position;

    // Orders hold category indices; the moving bar appears twice in the gap layout.
    std::vector<std::size_t> rest;
    for (std::size_t c = 0; c < k; ++c) {
        if (c != m) rest.push_back(c);
    }
    std::vector<std::size_t> final_order = rest;
    final_order.insert(final_order.begin() + static_cast<std::ptrdiff_t>(j), m);

    std::vector<double> pos_initial(k);
    std::vector<double> pos_gap(k);  // source slot for the moving bar
    std::vector<double> pos_final(k);
    double dst_gap = 0.0;
    for (std::size_t c = 0; c < k; ++c) pos_initial[c] = static_cast<double>(c);
    for (std::size_t p = 0; p < k; ++p) pos_final[final_order[p]] = static_cast<double>(p);
    {
        double slot = 0.0;
        for (std::size_t p = 0; p <= rest.size(); ++p) {
            if (p == m) pos_gap[m] = slot++;
            if (p == j) dst_gap = slot++;
            if (p < rest.size()) pos_gap[rest[p]] = slot++;
        }
    }

    StackedBarChart after = chart;
    for (std::size_t p = 0; p < k; ++p) {
        after.categories[p] = chart.categories[final_order[p]];
        after.heights[p] = chart.heights[final_order[p]];
    }

    TransitionScript script;
    script.kind = "horizontal_reorder";
    script.palette = palette;
    script.initial = stacked_bar_frame(chart, palette);
    script.final = stacked_bar_frame(after, palette);

    const Rect v0 = script.initial.viewport;
    const Rect vg = fit_viewport(stacked_bounds(chart, k + 1));
    const double sw = default_stroke(vg);
    double max_h = 0.0;
    for (std::size_t c = 0; c < k; ++c) max_h = std::max(max_h, chart.bar_height(c));
    const double label_y = -0.08 * std::max(max_h, 1e-9);

    // Draws every bar at slot positions; the moving bar's liquid is split
    // between its source slot and the destination slot.
    struct Layout {
        std::vector<double> slot;   // per category; slot of the source for m
        double dst_slot = 0.0;
        std::vector<double> src_heights;
        std::vector<double> dst_heights;
        double dst_label_alpha = 0.0;
        double src_label_alpha = 1.0;
        bool containers = false;
    };
    auto draw = [=](const Layout& lay, const Rect& viewport) {
        Frame f;
        f.viewport = viewport;
        auto stack = [&](std::size_t c, double slot, const std::vector<double>& heights) {
            const double x0 = bar_x(chart, slot);
            double y = 0.0;
            for (std::size_t l = 0; l < chart.levels.size(); ++l) {
                const double top = y + heights[l];
                if (heights[l] > 0.0) {
                    f.primitives.push_back(ScenePrimitive::filled(
                        {x0, x0 + chart.bar_width, y, top}, chart.levels[l].color,
                        segment_liquid(chart.categories[c], chart.levels[l].label)));
                }
                y = top;
            }
        };
        for (std::size_t c = 0; c < k; ++c) {
            stack(c, lay.slot[c], c == m ? lay.src_heights : chart.heights[c]);
        }
        stack(m, lay.dst_slot, lay.dst_heights);
        const double full = chart.bar_height(m);
        if (lay.containers && full > 0.0) {
            for (double slot : {lay.slot[m], lay.dst_slot}) {
                const double x0 = bar_x(chart, slot);
                f.primitives.push_back(
                    ScenePrimitive::stroked({x0, x0 + chart.bar_width, 0.0, full}, palette.container, sw));
            }
        }
        for (std::size_t c = 0; c < k; ++c) {
            const double x = bar_x(chart, lay.slot[c]) + 0.5 * chart.bar_width;
            const double alpha = c == m ? lay.src_label_alpha : 1.0;
            if (alpha > 0.0) {
                f.primitives.push_back(ScenePrimitive::label({x, label_y}, chart.categories[c],
                                                             with_alpha(palette.label, alpha)));
            }
        }
        if (lay.dst_label_alpha > 0.0) {
            const double x = bar_x(chart, lay.dst_slot) + 0.5 * chart.bar_width;
            f.primitives.push_back(ScenePrimitive::label({x, label_y}, chart.categories[m],
                                                         with_alpha(palette.label, lay.dst_label_alpha)));
        }
        return f;
    };

    const std::vector<double> full_heights = chart.heights[m];
    const std::vector<double> empty(chart.levels.size(), 0.0);

    script.stages.push_back(plan_view_change(v0, vg, script.initial.primitives, kViewWeight));

    script.stages.push_back(make_stage(
        StageKind::LayoutGap, kViewWeight, "open gap", [=](TimeParam t) {
            const EasedTime u = ease(t);
            Layout lay;
            lay.slot.resize(k);
            for (std::size_t c = 0; c < k; ++c) lay.slot[c] = lerp(pos_initial[c], pos_gap[c], u);
            lay.dst_slot = dst_gap;
            lay.src_heights = full_heights;
            lay.dst_heights = empty;
            lay.dst_label_alpha = u.value();
            return draw(lay, vg);
        }));

    std::vector<std::size_t> order;
    for (std::size_t l = 0; l < chart.levels.size(); ++l) {
        if (full_heights[l] > 0.0) order.push_back(l);
    }
    script.stages.push_back(make_stage(
        StageKind::SegmentTransferSequence, kMainWeight, "transfer segments", [=](TimeParam t) {
            Layout lay;
            lay.slot = pos_gap;
            lay.dst_slot = dst_gap;
            lay.dst_label_alpha = 1.0;
            lay.containers = true;
            lay.src_heights = full_heights;
            lay.dst_heights = empty;
            if (!order.empty()) {
                // Equal-weight sub-stages, bottom segment first, each eased on its own.
                const double pos = t.value() * static_cast<double>(order.size());
                const auto q = std::min(static_cast<std::size_t>(pos), order.size() - 1);
                const EasedTime u = ease(std::clamp(pos - static_cast<double>(q), 0.0, 1.0));
                for (std::size_t r = 0; r < order.size(); ++r) {
                    const std::size_t l = order[r];
                    if (r < q) {
                        lay.src_heights[l] = 0.0;
                        lay.dst_heights[l] = full_heights[l];
                    } else if (r == q) {
                        const auto spec = TransferSpec::create(
                            {{chart.bar_width, full_heights[l], 0.0}, {chart.bar_width, 0.0, full_heights[l]}});
                        const auto levels = transfer_at(spec, u);
                        lay.src_heights[l] = levels[0];
                        lay.dst_heights[l] = levels[1];
                    }
                }
            }
            return draw(lay, vg);
        }));

    script.stages.push_back(make_stage(
        StageKind::LayoutGap, kViewWeight, "close gap", [=](TimeParam t) {
            const EasedTime u = ease(t);
            Layout lay;
            lay.slot.resize(k);
            for (std::size_t c = 0; c < k; ++c) {
                lay.slot[c] = c == m ? pos_gap[c] : lerp(pos_gap[c], pos_final[c], u);
            }
            lay.dst_slot = lerp(dst_gap, pos_final[m], u);
            lay.src_heights = empty;
            lay.dst_heights = full_heights;
            lay.dst_label_alpha = 1.0;
            lay.src_label_alpha = 1.0 - u.value();
            return draw(lay, vg);
        }));

    script.stages.push_back(plan_view_change(vg, v0, script.final.primitives, kViewWeight));
    return script;
}

// ─── confusion matrix: fluctuation diagram to mosaic plot ────────────────────

TransitionScript plan_fluctuation_to_mosaic(const ConfusionMatrix& cm, const Palette& palette,
                                            double grid_cell_size) {
    const ProbabilityTable pt = probability_table(cm);
    const std::size_t k = pt.classes();
    const FluctuationLayout layout = fluctuation_layout(pt, grid_cell_size);
    const MosaicLayout mosaic = mosaic_layout(pt);
    const double g = layout.cell_size;
    const double kg = static_cast<double>(k) * g;
    const Point origin{layout.band_origin_x, g + 0.5 * (kg - 1.0)};
    const double sw = 0.03 * g;
    const double deco_sw = 0.01 * g;

    struct Cell {
        std::string liquid;
        Color fill;
        Color edge;
        Rect square;   // in the grid
        Rect staged;   // square moved to the staging strip, resting on the band bottom
        Rect band;     // mosaic segment at the row's ordinate
        Rect piled;    // mosaic segment in the final unit square
        ReshapeSpec reshape;
    };
    std::vector<Cell> cells;
    for (std::size_t p = 0; p < k; ++p) {
        const Rect& row_slot = layout.slots[p][0];
        const double band_bottom = row_slot.center_y() - 0.5 * pt.marginal_pred[p];
        const double band_top = band_bottom + pt.marginal_pred[p];
        double cursor = origin.x;
        for (std::size_t o = 0; o < k; ++o) {
            const Rect& seg = mosaic.segments[p][o];
            const double side = std::sqrt(pt.joint[p][o]);
            const double cursor_next = cursor + std::max(side, seg.width());
            if (pt.joint[p][o] <= 0.0) {
                cursor = cursor_next;
                continue;
            }
            Cell c;
            c.liquid = joint_liquid(pt.labels[p], pt.labels[o]);
            c.fill = palette.class_color(p);
            c.edge = palette.class_color(o);
            c.square = layout.cells[p][o];
            c.staged = {cursor, cursor + side, band_bottom, band_bottom + side};
            c.band = {origin.x + seg.x_min, origin.x + seg.x_max, band_bottom, band_top};
            c.piled = {origin.x + seg.x_min, origin.x + seg.x_max, origin.y + seg.y_min,
                       origin.y + seg.y_max};
            c.reshape = classify_reshape(c.staged, c.band);
            c.reshape.staging = Staging::Direct;
            cells.push_back(std::move(c));
            cursor = cursor_next;
        }
    }

    const auto statics = std::make_shared<const std::vector<ScenePrimitive>>(
        fluctuation_static_primitives(layout, pt, palette));
    TransitionScript script;
    script.kind = "fluctuation_to_mosaic";
    script.palette = palette;
    script.initial = fluctuation_frame(layout, pt, palette);
    const Rect v_full = script.initial.viewport;
    const Rect v_mosaic = fit_viewport({origin.x, origin.x + 1.0, origin.y, origin.y + 1.0}, 0.08);
    script.final.viewport = v_mosaic;
    script.final.primitives = *statics;
    for (auto& p : mosaic_primitives(mosaic, pt, origin, palette, sw)) {
        script.final.primitives.push_back(std::move(p));
    }

    auto frame_with = [statics, v_full](std::vector<ScenePrimitive> moving) {
        Frame f;
        f.viewport = v_full;
        f.primitives = *statics;
        f.primitives.insert(f.primitives.end(), std::make_move_iterator(moving.begin()),
                            std::make_move_iterator(moving.end()));
        return f;
    };
    auto cell_prim = [sw](const Cell& c, const Rect& r) {
        return ScenePrimitive::filled(r, c.fill, c.liquid, c.edge, sw);
    };

    script.stages.push_back(make_stage(
        StageKind::BlockApplication, kMainWeight, "move squares to the staging strip",
        [=](TimeParam t) {
            const EasedTime u = ease(t);
            std::vector<ScenePrimitive> moving;
            for (const auto& c : cells) {
                moving.push_back(cell_prim(
                    c, translate_at(c.square, c.staged.x_min - c.square.x_min,
                                    c.staged.y_min - c.square.y_min, u)));
            }
            return frame_with(std::move(moving));
        }));

    script.stages.push_back(make_stage(
        StageKind::BlockApplication, kMainWeight, "reshape squares into bands",
        [=](TimeParam t) {
            const EasedTime u = ease(t);
            DecorationStyle style{palette, deco_sw};
            std::vector<ScenePrimitive> moving;
            std::vector<ScenePrimitive> decoration;
            for (const auto& c : cells) {
                auto block = reshape_at(c.reshape, u, style);
                moving.push_back(cell_prim(c, block.rect));
                if (u.value() > 0.0 && u.value() < 1.0) {
                    decoration.insert(decoration.end(), block.decoration.begin(),
                                      block.decoration.end());
                }
            }
            moving.insert(moving.end(), decoration.begin(), decoration.end());
            return frame_with(std::move(moving));
        }));

    script.stages.push_back(make_stage(
        StageKind::BlockApplication, kMainWeight, "pile up bands", [=](TimeParam t) {
            const EasedTime u = ease(t);
            std::vector<ScenePrimitive> moving;
            for (const auto& c : cells) {
                const Rect column = bounding_box(c.band, c.piled);
                moving.push_back(cell_prim(
                    c, u.value() == 1.0 ? c.piled
                                        : shift_at(c.band, column, Axis::Y,
                                                   c.piled.y_min - c.band.y_min, u)));
            }
            return frame_with(std::move(moving));
        }));

    script.stages.push_back(plan_view_change(v_full, v_mosaic, script.final.primitives, kViewWeight));
    return script;
}

// ─── test hook ───────────────────────────────────────────────────────────────

TransitionScript corrupt_liquid(TransitionScript script, std::string liquid, double factor,
                                std::optional<std::size_t> stage) {
    std::size_t target = 0;
    if (stage) {
        target = *stage;
    } else {
        double best = -1.0;
        for (std::size_t s = 0; s < script.stages.size(); ++s) {
            const auto& st = script.stages[s];
            if (st.conserving && st.kind != StageKind::ViewChange && st.duration_weight > best) {
                best = st.duration_weight;
                target = s;
            }
        }
    }
    if (target >= script.stages.size()) {
        throw Error(ErrorCode::ValidationError, "corruption hook names a missing stage");
    }
    auto& s = script.stages[target];
    s.render = [render = std::move(s.render), liquid, factor](TimeParam t) {
        Frame f = render(t);
        std::string id = liquid;
        for (auto& p : f.primitives) {
            if (!p.is_liquid()) continue;
            if (id.empty()) id = p.liquid;
            if (p.liquid == id) p.rect.y_max = p.rect.y_min + factor * p.rect.height();
        }
        return f;
    };
    return script;
}

}  // namespace aquanim
