#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aquanim/geometry.hpp"

namespace aquanim {

/// Named color slots. Planners read slots, never literal hues.
struct Palette {
    Color background{1.0, 1.0, 1.0, 1.0};
    Color liquid{0.62, 0.62, 0.62, 1.0};            // default gray liquid
    Color more{0.86, 0.15, 0.15, 1.0};              // more data (red)
    Color less{0.16, 0.35, 0.85, 1.0};              // less data (blue)
    Color selection{0.98, 0.80, 0.10, 1.0};         // selected bins (yellow)
    Color segment_selection{0.82, 0.18, 0.75, 1.0}; // selected stacked level (magenta)
    Color source_contour{0.80, 0.80, 0.80, 1.0};    // light gray
    Color target_contour{0.30, 0.30, 0.30, 1.0};    // dark gray
    Color cylinder{0.10, 0.10, 0.10, 1.0};
    Color piston{0.86, 0.15, 0.15, 1.0};
    Color free_surface{0.15, 0.65, 0.25, 1.0};
    Color container{0.35, 0.35, 0.35, 1.0};
    Color label{0.10, 0.10, 0.10, 1.0};
    Color reference{0.55, 0.55, 0.55, 1.0};
    Color grid{0.88, 0.88, 0.88, 1.0};
    // Per-class colors for confusion matrices (fill = predicted, edge = observed).
    std::vector<Color> classes{{0.98, 0.80, 0.10, 1.0},
                               {0.16, 0.35, 0.85, 1.0},
                               {0.86, 0.15, 0.15, 1.0},
                               {0.15, 0.65, 0.25, 1.0},
                               {0.55, 0.30, 0.70, 1.0},
                               {0.95, 0.50, 0.10, 1.0}};

    const Color& class_color(std::size_t i) const { return classes[i % classes.size()]; }

    /// Overrides one named slot. Returns false for an unknown name.
    bool set(std::string_view name, const Color& c);
    static std::vector<std::string> slot_names();
};

}  // namespace aquanim
