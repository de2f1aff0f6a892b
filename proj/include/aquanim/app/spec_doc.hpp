#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "aquanim/palette.hpp"
#include "aquanim/render.hpp"
#include "aquanim/transitions.hpp"

namespace aquanim::app {

/// A transition document that cannot be interpreted: bad JSON, unknown kinds,
/// missing or mistyped fields, unreadable datasets.
class SpecError : public std::runtime_error {
public:
    SpecError(std::string code, std::string detail);

    const std::string& code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string code_;
    std::string detail_;
};

struct DatasetPolicy {
    std::filesystem::path base_dir = ".";
    /// Reject dataset paths that resolve outside base_dir.
    bool confine = false;
};

struct PlannedTransition {
    TransitionScript script;
    RenderConfig render;
};

/// Throws SpecError for document problems; planner failures surface as Error.
PlannedTransition plan_document(const nlohmann::json& doc, const DatasetPolicy& datasets,
                                const Palette& base_palette = {});

nlohmann::json parse_document(std::string_view text);
nlohmann::json load_document(const std::filesystem::path& path);

/// Applies {"slot": "#RRGGBB[AA]", "classes": [...]} overrides.
Palette apply_palette(Palette palette, const nlohmann::json& overrides);

/// Default palette with the file named by AQUANIM_PALETTE applied, if set.
Palette environment_palette();

/// Supported transition kinds with their parameters.
nlohmann::json transition_catalog();

}  // namespace aquanim::app
