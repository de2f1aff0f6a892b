#pragma once

#include <filesystem>
#include <string_view>
#include <variant>
#include <vector>

#include "aquanim/chart_models.hpp"
#include "aquanim/palette.hpp"

namespace aquanim::app {

enum class DatasetKind { Samples, StackedBars, Confusion };

/// One value per line; an optional non-numeric header line.
std::vector<double> parse_samples_csv(std::string_view text);

/// Rows of category,level,value with an optional header. Categories and levels
/// keep first-appearance order; missing combinations are 0. Level colors come
/// from the palette's class colors.
StackedBarChart parse_stacked_csv(std::string_view text, const Palette& palette = {});

/// First row: corner cell then observed labels. Following rows: predicted
/// label then integer counts. Both label lists must agree.
ConfusionMatrix parse_confusion_csv(std::string_view text);

using Dataset = std::variant<std::vector<double>, StackedBarChart, ConfusionMatrix>;

/// Throws Error(ParseError) with line and column, Error(ValidationError).
Dataset load_dataset(const std::filesystem::path& path, DatasetKind kind,
                     const Palette& palette = {});

}  // namespace aquanim::app
