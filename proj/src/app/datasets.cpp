#include "aquanim/app/datasets.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "aquanim/error.hpp"

namespace aquanim::app {

namespace {

struct Field {
    std::string_view text;
    std::size_t column;  // 1-based
};

struct Row {
    std::size_t line;  // 1-based
    std::vector<Field> fields;
};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Row> split_rows(std::string_view text) {
    std::vector<Row> rows;
    std::size_t line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++line;
        if (!trim(raw).empty()) {
            Row row{line, {}};
            std::size_t start = 0;
            while (true) {
                auto comma = raw.find(',', start);
                auto cell = raw.substr(start, comma == std::string_view::npos ? raw.npos : comma - start);
                const auto lead = cell.find_first_not_of(" \t");
                row.fields.push_back({trim(cell), start + 1 + (lead == cell.npos ? 0 : lead)});
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            rows.push_back(std::move(row));
        }
        pos = end + 1;
    }
    return rows;
}

[[noreturn]] void parse_error(const Row& row, const Field& f, const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(row.line) + ", column " +
                                           std::to_string(f.column) + ": " + what);
}

bool try_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

double number(const Row& row, const Field& f) {
    double v = 0.0;
    if (!try_double(f.text, v)) parse_error(row, f, "expected a number, got '" + std::string(f.text) + "'");
    return v;
}

std::int64_t integer(const Row& row, const Field& f) {
    std::int64_t v = 0;
    std::string_view s = f.text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        parse_error(row, f, "expected an integer count, got '" + std::string(f.text) + "'");
    }
    return v;
}

void expect_fields(const Row& row, std::size_t n) {
    if (row.fields.size() != n) {
        const Field& f = row.fields.size() > n ? row.fields[n] : row.fields.back();
        parse_error(row, f, "expected " + std::to_string(n) + " fields, found " +
                                std::to_string(row.fields.size()));
    }
}

}  // namespace

std::vector<double> parse_samples_csv(std::string_view text) {
    auto rows = split_rows(text);
    std::vector<double> values;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        expect_fields(row, 1);
        double v = 0.0;
        if (i == 0 && !try_double(row.fields[0].text, v)) continue;  // header
        values.push_back(number(row, row.fields[0]));
    }
    if (values.empty()) throw Error(ErrorCode::EmptyData, "the samples file holds no values");
    return values;
}

StackedBarChart parse_stacked_csv(std::string_view text, const Palette& palette) {
    auto rows = split_rows(text);
    StackedBarChart chart;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        expect_fields(row, 3);
        double v = 0.0;
        if (i == 0 && !try_double(row.fields[2].text, v)) continue;  // header
        const std::string category(row.fields[0].text);
        const std::string level(row.fields[1].text);
        if (category.empty()) parse_error(row, row.fields[0], "empty category label");
        if (level.empty()) parse_error(row, row.fields[1], "empty level label");
        const double value = number(row, row.fields[2]);
        if (value < 0.0) {
            throw Error(ErrorCode::ValidationError,
                        "line " + std::to_string(row.line) + ": bar segment heights must be non-negative");
        }
        std::size_t c = chart.category_index(category);
        if (c == std::string_view::npos) {
            c = chart.categories.size();
            chart.categories.push_back(category);
            chart.heights.emplace_back(chart.levels.size(), 0.0);
        }
        std::size_t l = chart.level_index(level);
        if (l == std::string_view::npos) {
            l = chart.levels.size();
            chart.levels.push_back({level, palette.class_color(l)});
            for (auto& h : chart.heights) h.push_back(0.0);
        }
        if (auto [it, fresh] = seen.emplace(std::pair{c, l}, row.line); !fresh) {
            throw Error(ErrorCode::ValidationError,
                        "line " + std::to_string(row.line) + ": segment (" + category + ", " + level +
                            ") already given on line " + std::to_string(it->second));
        }
        chart.heights[c][l] = value;
    }
    if (chart.categories.empty()) throw Error(ErrorCode::EmptyData, "the bar chart file holds no rows");
    chart.validate();
    return chart;
}

ConfusionMatrix parse_confusion_csv(std::string_view text) {
    auto rows = split_rows(text);
    if (rows.empty()) throw Error(ErrorCode::EmptyData, "the confusion matrix file is empty");
    const Row& header = rows[0];
    std::vector<std::string> observed;
    for (std::size_t j = 1; j < header.fields.size(); ++j) {
        if (header.fields[j].text.empty()) parse_error(header, header.fields[j], "empty class label");
        observed.emplace_back(header.fields[j].text);
    }
    const std::size_t k = observed.size();
    std::vector<std::string> predicted;
    std::vector<std::vector<std::int64_t>> counts;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const Row& row = rows[i];
        expect_fields(row, k + 1);
        predicted.emplace_back(row.fields[0].text);
        std::vector<std::int64_t> line;
        for (std::size_t j = 1; j <= k; ++j) {
            const auto v = integer(row, row.fields[j]);
            if (v < 0) {
                throw Error(ErrorCode::ValidationError,
                            "line " + std::to_string(row.line) + ", column " +
                                std::to_string(row.fields[j].column) + ": counts must be non-negative");
            }
            line.push_back(v);
        }
        counts.push_back(std::move(line));
    }
    if (predicted != observed) {
        throw Error(ErrorCode::ValidationError,
                    "predicted labels (first column) must list the observed labels (first row) in "
                    "the same order");
    }
    return make_confusion_matrix(std::move(observed), std::move(counts));
}

Dataset load_dataset(const std::filesystem::path& path, DatasetKind kind, const Palette& palette) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open dataset '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    switch (kind) {
        case DatasetKind::Samples: return parse_samples_csv(text);
        case DatasetKind::StackedBars: return parse_stacked_csv(text, palette);
        case DatasetKind::Confusion: return parse_confusion_csv(text);
    }
    throw Error(ErrorCode::ValidationError, "unknown dataset kind");
}

}  // namespace aquanim::app
