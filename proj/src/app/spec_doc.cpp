#include "aquanim/app/spec_doc.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "aquanim/app/datasets.hpp"
#include "aquanim/error.hpp"

namespace aquanim::app {

using nlohmann::json;

SpecError::SpecError(std::string code, std::string detail)
    : std::runtime_error(code + ": " + detail), code_(std::move(code)), detail_(std::move(detail)) {}

namespace {

[[noreturn]] void invalid(const std::string& detail) { throw SpecError("ValidationError", detail); }

const json& field(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) invalid(where + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) invalid(where + "." + key + " is required");
    return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

template <typename T>
T as(const json& j, const std::string& where) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        invalid(where + " has the wrong type (got " + std::string(j.type_name()) + ")");
    }
}

std::vector<double> numbers(const json& j, const std::string& where) {
    if (!j.is_array()) invalid(where + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) invalid(where + " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::pair<double, double> range_of(const json& j, const std::string& where) {
    const auto v = numbers(j, where);
    if (v.size() != 2) invalid(where + " must be [lo, hi]");
    return {v[0], v[1]};
}

Rect rect_of(const json& j, const std::string& where) {
    const auto v = numbers(j, where);
    if (v.size() != 4) invalid(where + " must be [x_min, x_max, y_min, y_max]");
    Rect r{v[0], v[1], v[2], v[3]};
    if (!r.valid()) invalid(where + " must satisfy x_min <= x_max and y_min <= y_max");
    return r;
}

std::size_t count_of(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        invalid(where + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

Color color_of(const json& j, const std::string& where) {
    try {
        return Color::from_hex(as<std::string>(j, where));
    } catch (const Error& e) {
        invalid(where + ": " + e.detail());
    }
}

std::filesystem::path resolve_dataset(const json& j, const std::string& where,
                                      const DatasetPolicy& policy) {
    const std::filesystem::path rel = as<std::string>(j, where);
    const auto base = std::filesystem::weakly_canonical(std::filesystem::absolute(policy.base_dir));
    const auto full = std::filesystem::weakly_canonical(rel.is_absolute() ? rel : base / rel);
    if (policy.confine) {
        auto [b, f] = std::mismatch(base.begin(), base.end(), full.begin(), full.end());
        if (b != base.end()) {
            throw SpecError("DatasetError", where + " must stay inside the dataset directory");
        }
    }
    return full;
}

template <typename T>
T load(const json& j, const std::string& where, const DatasetPolicy& policy, DatasetKind kind,
       const Palette& palette) {
    const auto path = resolve_dataset(j, where, policy);
    try {
        return std::get<T>(load_dataset(path, kind, palette));
    } catch (const Error& e) {
        throw SpecError(std::string(to_string(e.code())), where + " '" + j.get<std::string>() + "': " + e.detail());
    }
}

// ─── histograms ──────────────────────────────────────────────────────────────

struct HistogramSource {
    std::optional<std::vector<double>> samples;
    std::vector<double> counts;
    double lo = 0.0;
    double hi = 1.0;
};

HistogramSource histogram_source(const json& chart, const DatasetPolicy& policy) {
    HistogramSource src;
    const json* samples = optional_field(chart, "samples");
    const json* dataset = optional_field(chart, "dataset");
    const json* counts = optional_field(chart, "counts");
    if ((samples != nullptr) + (dataset != nullptr) + (counts != nullptr) != 1) {
        invalid("chart needs exactly one of samples, dataset or counts");
    }
    if (counts) {
        src.counts = numbers(*counts, "chart.counts");
        std::tie(src.lo, src.hi) = range_of(field(chart, "range", "chart"), "chart.range");
        return src;
    }
    src.samples = samples ? numbers(*samples, "chart.samples")
                          : load<std::vector<double>>(*dataset, "chart.dataset", policy,
                                                      DatasetKind::Samples, {});
    if (const json* r = optional_field(chart, "range")) {
        std::tie(src.lo, src.hi) = range_of(*r, "chart.range");
    } else {
        if (src.samples->empty()) throw Error(ErrorCode::EmptyData, "no samples given");
        const auto [mn, mx] = std::minmax_element(src.samples->begin(), src.samples->end());
        src.lo = *mn;
        src.hi = *mx;
    }
    const std::size_t bins = count_of(field(chart, "bins", "chart"), "chart.bins");
    src.counts = bin_counts(*src.samples, bins, src.lo, src.hi);
    return src;
}

std::vector<double> new_counts(const json& tr, const HistogramSource& src,
                               const DatasetPolicy& policy) {
    const json* counts = optional_field(tr, "new_counts");
    const json* samples = optional_field(tr, "new_samples");
    const json* dataset = optional_field(tr, "new_dataset");
    if ((counts != nullptr) + (samples != nullptr) + (dataset != nullptr) != 1) {
        invalid("data_change needs exactly one of new_counts, new_samples or new_dataset");
    }
    if (counts) return numbers(*counts, "transition.new_counts");
    const auto values = samples ? numbers(*samples, "transition.new_samples")
                                : load<std::vector<double>>(*dataset, "transition.new_dataset",
                                                            policy, DatasetKind::Samples, {});
    return bin_counts(values, src.counts.size(), src.lo, src.hi);
}

Histogram rebin_target(const json& tr, const HistogramSource& src) {
    double lo = src.lo;
    double hi = src.hi;
    if (const json* r = optional_field(tr, "new_range")) std::tie(lo, hi) = range_of(*r, "transition.new_range");
    if (std::abs(lo - src.lo) > kEdgeTolerance || std::abs(hi - src.hi) > kEdgeTolerance) {
        std::ostringstream os;
        os << "rebinning must keep the data range: [" << src.lo << ", " << src.hi << "] vs [" << lo
           << ", " << hi << "]";
        throw Error(ErrorCode::RangeMismatch, os.str());
    }
    if (const json* c = optional_field(tr, "new_counts")) {
        return histogram_from_counts(numbers(*c, "transition.new_counts"), lo, hi);
    }
    if (!src.samples) {
        invalid("rebinning a chart given by counts needs transition.new_counts");
    }
    const std::size_t bins = count_of(field(tr, "new_bin_count", "transition"), "transition.new_bin_count");
    return histogram_from_samples(*src.samples, bins, lo, hi);
}

TransitionScript plan_histogram(const json& chart, const json& tr, const std::string& kind,
                                const DatasetPolicy& policy, const Palette& palette) {
    const HistogramSource src = histogram_source(chart, policy);
    if (kind == "data_change") {
        const auto counts = new_counts(tr, src, policy);
        return plan_histogram_data_change(src.counts, counts, src.lo, src.hi, palette);
    }
    const Histogram h = histogram_from_counts(src.counts, src.lo, src.hi);
    if (kind == "rebin") return plan_histogram_rebin(h, rebin_target(tr, src), palette);
    if (kind == "rebin_diffusive") {
        std::size_t steps = 8;
        double alpha = 0.5;
        if (const json* s = optional_field(tr, "steps")) steps = count_of(*s, "transition.steps");
        if (const json* a = optional_field(tr, "alpha")) alpha = as<double>(*a, "transition.alpha");
        return plan_histogram_rebin_diffusive(h, rebin_target(tr, src), steps, alpha, palette);
    }
    if (kind == "proportion_tip") {
        const json& sel = field(tr, "selected_bins", "transition");
        if (!sel.is_array()) invalid("transition.selected_bins must be an array of bin indices");
        std::vector<std::size_t> bins;
        for (const auto& b : sel) bins.push_back(count_of(b, "transition.selected_bins[]"));
        bool round_trip = false;
        if (const json* r = optional_field(tr, "round_trip")) round_trip = as<bool>(*r, "transition.round_trip");
        return plan_proportion_tip(h, bins, round_trip, palette);
    }
    invalid("transition kind '" + kind + "' does not apply to a histogram");
}

// ─── stacked bars ────────────────────────────────────────────────────────────

StackedBarChart stacked_chart(const json& chart, const DatasetPolicy& policy, const Palette& palette) {
    StackedBarChart out;
    if (const json* ds = optional_field(chart, "dataset")) {
        out = load<StackedBarChart>(*ds, "chart.dataset", policy, DatasetKind::StackedBars, palette);
    } else {
        out.categories = as<std::vector<std::string>>(field(chart, "categories", "chart"), "chart.categories");
        const json& levels = field(chart, "levels", "chart");
        if (!levels.is_array()) invalid("chart.levels must be an array");
        for (std::size_t l = 0; l < levels.size(); ++l) {
            const json& lv = levels[l];
            if (lv.is_string()) {
                out.levels.push_back({lv.get<std::string>(), palette.class_color(l)});
            } else {
                StackLevel level{as<std::string>(field(lv, "label", "chart.levels[]"), "chart.levels[].label"),
                                 palette.class_color(l)};
                if (const json* c = optional_field(lv, "color")) level.color = color_of(*c, "chart.levels[].color");
                out.levels.push_back(std::move(level));
            }
        }
        const json& heights = field(chart, "heights", "chart");
        if (!heights.is_array()) invalid("chart.heights must be an array of rows");
        for (const auto& row : heights) out.heights.push_back(numbers(row, "chart.heights[]"));
    }
    if (const json* w = optional_field(chart, "bar_width")) out.bar_width = as<double>(*w, "chart.bar_width");
    if (const json* g = optional_field(chart, "gap")) out.gap = as<double>(*g, "chart.gap");
    return out;
}

TransitionScript plan_stacked(const json& chart, const json& tr, const std::string& kind,
                              const DatasetPolicy& policy, const Palette& palette) {
    const StackedBarChart bars = stacked_chart(chart, policy, palette);
    if (kind == "vertical_reorder") {
        return plan_stacked_vertical_reorder(
            bars, as<std::string>(field(tr, "level", "transition"), "transition.level"), palette);
    }
    if (kind == "horizontal_reorder") {
        const json& moving = field(tr, "moving_category", "transition");
        if (moving.is_array()) invalid("one moving category per transition; moving several bars at once is not supported");
        return plan_stacked_horizontal_reorder(
            bars, as<std::string>(moving, "transition.moving_category"),
            count_of(field(tr, "target_position", "transition"), "transition.target_position"), palette);
    }
    invalid("transition kind '" + kind + "' does not apply to a stacked bar chart");
}

// ─── confusion matrices and single rectangles ────────────────────────────────

TransitionScript plan_confusion(const json& chart, const std::string& kind,
                                const DatasetPolicy& policy, const Palette& palette) {
    if (kind != "fluctuation_to_mosaic") {
        invalid("transition kind '" + kind + "' does not apply to a confusion matrix");
    }
    ConfusionMatrix cm;
    if (const json* ds = optional_field(chart, "dataset")) {
        cm = load<ConfusionMatrix>(*ds, "chart.dataset", policy, DatasetKind::Confusion, palette);
    } else {
        cm = make_confusion_matrix(
            as<std::vector<std::string>>(field(chart, "labels", "chart"), "chart.labels"),
            as<std::vector<std::vector<std::int64_t>>>(field(chart, "counts", "chart"), "chart.counts"));
    }
    double g = 1.0;
    if (const json* c = optional_field(chart, "grid_cell_size")) g = as<double>(*c, "chart.grid_cell_size");
    return plan_fluctuation_to_mosaic(cm, palette, g);
}

TransitionScript plan_rect(const json& chart, const json& tr, const std::string& kind,
                           const Palette& palette) {
    if (kind != "reshape") invalid("transition kind '" + kind + "' does not apply to a rectangle");
    const Rect init = rect_of(field(chart, "rect", "chart"), "chart.rect");
    const Rect final = rect_of(field(tr, "final", "transition"), "transition.final");
    std::optional<Staging> staging;
    if (const json* s = optional_field(tr, "staging")) {
        const auto name = as<std::string>(*s, "transition.staging");
        if (name == "direct") staging = Staging::Direct;
        else if (name == "translate_then_reshape") staging = Staging::TranslateThenReshape;
        else if (name == "reshape_then_translate") staging = Staging::ReshapeThenTranslate;
        else invalid("transition.staging must be direct, translate_then_reshape or reshape_then_translate");
    }
    return plan_reshape(init, final, palette, staging);
}

RenderConfig render_config(const json* r) {
    RenderConfig cfg;
    if (!r) return cfg;
    if (!r->is_object()) invalid("render must be an object");
    for (const auto& [key, value] : r->items()) {
        if (key == "fps") cfg.fps = as<int>(value, "render.fps");
        else if (key == "duration") cfg.duration = as<double>(value, "render.duration");
        else if (key == "width") cfg.width = as<int>(value, "render.width");
        else if (key == "height") cfg.height = as<int>(value, "render.height");
        else if (key == "precision") cfg.precision = as<int>(value, "render.precision");
        else invalid("unknown render setting '" + key + "'");
    }
    try {
        cfg.validate();
    } catch (const Error& e) {
        invalid("render: " + e.detail());
    }
    return cfg;
}

const std::vector<std::string>& known_kinds() {
    static const std::vector<std::string> kinds{
        "data_change",      "rebin",              "rebin_diffusive",       "proportion_tip",
        "vertical_reorder", "horizontal_reorder", "fluctuation_to_mosaic", "reshape"};
    return kinds;
}

}  // namespace

Palette apply_palette(Palette palette, const json& overrides) {
    if (!overrides.is_object()) invalid("palette must be an object of slot colors");
    for (const auto& [key, value] : overrides.items()) {
        if (key == "classes") {
            if (!value.is_array() || value.empty()) invalid("palette.classes must be a non-empty array");
            palette.classes.clear();
            for (const auto& c : value) palette.classes.push_back(color_of(c, "palette.classes[]"));
        } else if (!palette.set(key, color_of(value, "palette." + key))) {
            invalid("unknown palette slot '" + key + "'");
        }
    }
    return palette;
}

Palette environment_palette() {
    Palette palette;
    const char* path = std::getenv("AQUANIM_PALETTE");
    if (path == nullptr || *path == '\0') return palette;
    return apply_palette(palette, load_document(path));
}

json parse_document(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError("ParseError", e.what());
    }
}

json load_document(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("ParseError", "cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

PlannedTransition plan_document(const json& doc, const DatasetPolicy& datasets,
                                const Palette& base_palette) {
    if (!doc.is_object()) invalid("the transition document must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key != "chart" && key != "transition" && key != "render" && key != "palette" && key != "debug") {
            invalid("unknown top-level field '" + key + "'");
        }
    }
    Palette palette = base_palette;
    if (const json* p = optional_field(doc, "palette")) palette = apply_palette(palette, *p);
    PlannedTransition out;
    out.render = render_config(optional_field(doc, "render"));

    const json& chart = field(doc, "chart", "document");
    const json& tr = field(doc, "transition", "document");
    const auto type = as<std::string>(field(chart, "type", "chart"), "chart.type");
    const auto kind = as<std::string>(field(tr, "kind", "transition"), "transition.kind");
    if (std::find(known_kinds().begin(), known_kinds().end(), kind) == known_kinds().end()) {
        throw SpecError("UnknownTransition", "unknown transition kind '" + kind + "'");
    }

    if (type == "histogram") out.script = plan_histogram(chart, tr, kind, datasets, palette);
    else if (type == "stacked_bars") out.script = plan_stacked(chart, tr, kind, datasets, palette);
    else if (type == "confusion_matrix") out.script = plan_confusion(chart, kind, datasets, palette);
    else if (type == "rect") out.script = plan_rect(chart, tr, kind, palette);
    else invalid("unknown chart type '" + type + "'");

    if (const json* debug = optional_field(doc, "debug")) {
        if (const json* c = optional_field(*debug, "corrupt")) {
            std::string liquid;
            if (const json* l = optional_field(*c, "liquid")) liquid = as<std::string>(*l, "debug.corrupt.liquid");
            const double factor = as<double>(field(*c, "factor", "debug.corrupt"), "debug.corrupt.factor");
            std::optional<std::size_t> stage;
            if (const json* s = optional_field(*c, "stage")) stage = count_of(*s, "debug.corrupt.stage");
            out.script = corrupt_liquid(std::move(out.script), liquid, factor, stage);
        }
    }
    return out;
}

json transition_catalog() {
    auto param = [](const char* type, const char* desc, bool required) {
        return json{{"type", type}, {"description", desc}, {"required", required}};
    };
    json kinds = json::array();
    kinds.push_back({{"kind", "data_change"},
                     {"chart", "histogram"},
                     {"parameters",
                      {{"new_counts", param("number[]", "per-bin counts on the same bins", false)},
                       {"new_samples", param("number[]", "raw values binned like the chart", false)},
                       {"new_dataset", param("string", "samples CSV path", false)}}}});
    kinds.push_back({{"kind", "rebin"},
                     {"chart", "histogram"},
                     {"parameters",
                      {{"new_bin_count", param("integer", "target number of equal-width bins", true)},
                       {"new_range", param("[number, number]", "must equal the chart range", false)}}}});
    kinds.push_back({{"kind", "rebin_diffusive"},
                     {"chart", "histogram"},
                     {"parameters",
                      {{"new_bin_count", param("integer", "target number of equal-width bins", true)},
                       {"steps", param("integer", "smoothing iterations (default 8)", false)},
                       {"alpha", param("number", "neighbor weight in [0,1] (default 0.5)", false)}}}});
    kinds.push_back({{"kind", "proportion_tip"},
                     {"chart", "histogram"},
                     {"parameters",
                      {{"selected_bins", param("integer[]", "indices of the selected bars", true)},
                       {"round_trip", param("boolean", "pause then play back to the histogram", false)}}}});
    kinds.push_back({{"kind", "vertical_reorder"},
                     {"chart", "stacked_bars"},
                     {"parameters", {{"level", param("string", "legend level moved to the bottom", true)}}}});
    kinds.push_back({{"kind", "horizontal_reorder"},
                     {"chart", "stacked_bars"},
                     {"parameters",
                      {{"moving_category", param("string", "category to move", true)},
                       {"target_position", param("integer", "final index of the moved bar", true)}}}});
    kinds.push_back({{"kind", "fluctuation_to_mosaic"},
                     {"chart", "confusion_matrix"},
                     {"parameters", json::object()}});
    kinds.push_back({{"kind", "reshape"},
                     {"chart", "rect"},
                     {"parameters",
                      {{"final", param("[x_min, x_max, y_min, y_max]", "equal-area target rectangle", true)},
                       {"staging", param("string", "direct, translate_then_reshape or reshape_then_translate", false)}}}});
    return json{{"transitions", kinds}};
}

}  // namespace aquanim::app
