#include "aquanim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "aquanim/error.hpp"

namespace aquanim {

namespace {

constexpr double kSliver = 1e-12;

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool near(const Rect& a, const Rect& b, double tol) {
    return near(a.x_min, b.x_min, tol) && near(a.x_max, b.x_max, tol) &&
           near(a.y_min, b.y_min, tol) && near(a.y_max, b.y_max, tol);
}

/// Merges `b` into `a` when they share a full edge.
bool try_merge(Rect& a, const Rect& b, double tol) {
    if (near(a.x_min, b.x_min, tol) && near(a.x_max, b.x_max, tol)) {
        if (near(a.y_max, b.y_min, tol)) { a.y_max = b.y_max; return true; }
        if (near(b.y_max, a.y_min, tol)) { a.y_min = b.y_min; return true; }
    }
    if (near(a.y_min, b.y_min, tol) && near(a.y_max, b.y_max, tol)) {
        if (near(a.x_max, b.x_min, tol)) { a.x_max = b.x_max; return true; }
        if (near(b.x_max, a.x_min, tol)) { a.x_min = b.x_min; return true; }
    }
    return false;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

std::map<std::string, double> liquid_areas(const Frame& frame) {
    std::map<std::string, double> out;
    for (const auto& p : frame.primitives) {
        if (p.is_liquid()) out[p.liquid] += rect_area(p.rect);
    }
    return out;
}

std::map<std::string, std::vector<Rect>> canonical_liquids(const Frame& frame) {
    std::map<std::string, std::vector<Rect>> out;
    for (const auto& p : frame.primitives) {
        if (p.is_liquid() && rect_area(p.rect) > kSliver) out[p.liquid].push_back(p.rect);
    }
    for (auto& [id, rects] : out) {
        bool merged = true;
        while (merged) {
            merged = false;
            for (std::size_t i = 0; i < rects.size() && !merged; ++i) {
                for (std::size_t j = i + 1; j < rects.size(); ++j) {
                    if (try_merge(rects[i], rects[j], 1e-9)) {
                        rects.erase(rects.begin() + static_cast<std::ptrdiff_t>(j));
                        merged = true;
                        break;
                    }
                }
            }
        }
        std::sort(rects.begin(), rects.end(), [](const Rect& a, const Rect& b) {
            return std::tie(a.x_min, a.y_min, a.x_max, a.y_max) <
                   std::tie(b.x_min, b.y_min, b.x_max, b.y_max);
        });
    }
    return out;
}

double max_liquid_overlap(const Frame& frame, std::string* first, std::string* second) {
    std::vector<const ScenePrimitive*> liquids;
    for (const auto& p : frame.primitives) {
        if (p.is_liquid()) liquids.push_back(&p);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < liquids.size(); ++i) {
        for (std::size_t j = i + 1; j < liquids.size(); ++j) {
            if (liquids[i]->liquid == liquids[j]->liquid) continue;
            const double o = overlap_area(liquids[i]->rect, liquids[j]->rect);
            if (o > worst) {
                worst = o;
                if (first) *first = liquids[i]->liquid;
                if (second) *second = liquids[j]->liquid;
            }
        }
    }
    return worst;
}

bool same_scene(const Frame& a, const Frame& b, double tolerance, std::string* offending) {
    if (!near(a.viewport, b.viewport, tolerance)) {
        if (offending) *offending = "viewport";
        return false;
    }
    const auto ca = canonical_liquids(a);
    const auto cb = canonical_liquids(b);
    auto fail = [&](const std::string& id) {
        if (offending) *offending = id;
        return false;
    };
    for (const auto& [id, rects] : ca) {
        auto it = cb.find(id);
        if (it == cb.end() || it->second.size() != rects.size()) return fail(id);
        std::vector<bool> used(rects.size(), false);
        for (const auto& r : rects) {
            bool matched = false;
            for (std::size_t j = 0; j < rects.size(); ++j) {
                if (!used[j] && near(r, it->second[j], tolerance)) {
                    used[j] = matched = true;
                    break;
                }
            }
            if (!matched) return fail(id);
        }
    }
    for (const auto& [id, rects] : cb) {
        if (!ca.count(id)) return fail(id);
    }
    return true;
}

VerifyReport verify_script(const TransitionScript& script, const VerifyOptions& options) {
    if (options.samples < 2) {
        throw Error(ErrorCode::ValidationError, "verification needs at least 2 samples");
    }
    VerifyReport report;
    auto flag = [&](std::string check, double t, std::string liquid, std::string detail) {
        if (!report.violation) {
            report.violation = Violation{std::move(check), t, std::move(liquid), std::move(detail)};
        }
    };
    const double tol = options.tolerance;

    // Endpoint fidelity.
    {
        std::string id;
        if (!same_scene(evaluate(script, TimeParam(0.0)), script.initial, tol, &id)) {
            flag("endpoint", 0.0, id, "frame at t=0 differs from the initial chart");
        }
        if (!same_scene(evaluate(script, TimeParam(1.0)), script.final, tol, &id)) {
            flag("endpoint", 1.0, id, "frame at t=1 differs from the final chart");
        }
    }

    // Stage continuity.
    for (std::size_t k = 0; k + 1 < script.stages.size(); ++k) {
        std::string id;
        const Frame end = evaluate_stage(script, k, TimeParam(1.0));
        const Frame start = evaluate_stage(script, k + 1, TimeParam(0.0));
        if (!same_scene(end, start, tol, &id)) {
            const double t = [&] {
                double total = 0.0;
                double upto = 0.0;
                for (std::size_t s = 0; s < script.stages.size(); ++s) {
                    total += script.stages[s].duration_weight;
                    if (s <= k) upto += script.stages[s].duration_weight;
                }
                return upto / total;
            }();
            flag("continuity", t, id,
                 "stages '" + script.stages[k].label + "' and '" + script.stages[k + 1].label +
                     "' disagree at their boundary");
        }
    }

    // Per-frame checks.
    std::map<std::string, double> reference;
    std::size_t last_stage = 0;
    bool have_reference = false;
    for (std::size_t i = 0; i < options.samples; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(options.samples - 1);
        const StageLocation loc = locate(script, TimeParam(t));
        const Stage& stage = script.stages[loc.index];
        const Frame frame = stage.render(TimeParam(loc.local));
        ++report.frames_checked;
        const auto areas = liquid_areas(frame);

        if (script.nominal_area) {
            double total = 0.0;
            for (const auto& [id, a] : areas) total += a;
            const bool deviates = std::abs(total - *script.nominal_area) > 1e-9;
            if (deviates != (frame.tint > 0.0)) {
                flag("tint", t, "",
                     "total area " + fmt(total) + " with tint " + fmt(frame.tint) +
                         (deviates ? ": a deviation from the nominal area must be tinted"
                                   : ": tint must vanish at the nominal area"));
            }
        }

        bool reset = !have_reference;
        for (std::size_t s = std::min(last_stage, loc.index); s <= loc.index; ++s) {
            if (!script.stages[s].conserving) reset = true;
        }
        last_stage = loc.index;
        if (stage.conserving) {
            if (reset) {
                reference = liquid_areas(evaluate_stage(script, loc.index, TimeParam(0.0)));
                have_reference = true;
            }
            std::map<std::string, double> all = reference;
            for (const auto& [id, a] : areas) all.emplace(id, 0.0);
            for (const auto& [id, ref] : all) {
                auto it = areas.find(id);
                const double a = it == areas.end() ? 0.0 : it->second;
                const double err = ref < 1e-12 ? std::abs(a - ref) : std::abs(a - ref) / ref;
                report.max_area_error = std::max(report.max_area_error, err);
                if (err > tol) {
                    flag("conservation", t, id,
                         "area " + fmt(a) + " vs " + fmt(ref) + " (relative error " + fmt(err) +
                             ") in stage '" + stage.label + "'");
                }
            }
        } else {
            have_reference = false;
        }

        std::string a;
        std::string b;
        const double overlap = max_liquid_overlap(frame, &a, &b);
        if (overlap > options.overlap_tolerance) {
            flag("occlusion", t, a, "overlaps '" + b + "' by area " + fmt(overlap));
        }
    }
    return report;
}

}  // namespace aquanim
