#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aquanim/geometry.hpp"
#include "aquanim/transitions.hpp"

namespace aquanim {

/// Summed rect area per liquid id.
std::map<std::string, double> liquid_areas(const Frame& frame);

/// Liquid rects per id, slivers dropped and rects sharing a full edge merged.
std::map<std::string, std::vector<Rect>> canonical_liquids(const Frame& frame);

/// Largest overlap between rects of two distinct liquids; names the pair.
double max_liquid_overlap(const Frame& frame, std::string* first = nullptr,
                          std::string* second = nullptr);

/// Compares liquid geometry and viewports coordinate-wise. On mismatch returns
/// false and names the offending liquid (or "viewport").
bool same_scene(const Frame& a, const Frame& b, double tolerance, std::string* offending = nullptr);

struct VerifyOptions {
    std::size_t samples = 101;
    double tolerance = 1e-9;          // relative area, absolute coordinates
    double overlap_tolerance = 1e-12;
};

struct Violation {
    std::string check;  // conservation, tint, occlusion, endpoint, continuity
    double t = 0.0;
    std::string liquid;
    std::string detail;
};

struct VerifyReport {
    std::size_t frames_checked = 0;
    double max_area_error = 0.0;
    std::optional<Violation> violation;  // the first one found

    bool ok() const { return !violation; }
};

/// Conservation ledger, tint mirroring, occlusion-freedom, endpoint fidelity
/// and stage continuity over `samples` uniform times.
VerifyReport verify_script(const TransitionScript& script, const VerifyOptions& options = {});

}  // namespace aquanim
