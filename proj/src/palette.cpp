#include "aquanim/palette.hpp"

#include <array>
#include <utility>

namespace aquanim {

namespace {

using Slot = Color Palette::*;

constexpr std::array<std::pair<std::string_view, Slot>, 15> kSlots{{
    {"background", &Palette::background},
    {"liquid", &Palette::liquid},
    {"more", &Palette::more},
    {"less", &Palette::less},
    {"selection", &Palette::selection},
    {"segment_selection", &Palette::segment_selection},
    {"source_contour", &Palette::source_contour},
    {"target_contour", &Palette::target_contour},
    {"cylinder", &Palette::cylinder},
    {"piston", &Palette::piston},
    {"free_surface", &Palette::free_surface},
    {"container", &Palette::container},
    {"label", &Palette::label},
    {"reference", &Palette::reference},
    {"grid", &Palette::grid},
}};

}  // namespace

bool Palette::set(std::string_view name, const Color& c) {
    for (const auto& [slot_name, slot] : kSlots) {
        if (slot_name == name) {
            this->*slot = c;
            return true;
        }
    }
    return false;
}

std::vector<std::string> Palette::slot_names() {
    std::vector<std::string> names;
    for (const auto& [slot_name, slot] : kSlots) names.emplace_back(slot_name);
    return names;
}

}  // namespace aquanim
