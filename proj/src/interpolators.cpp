#include "aquanim/interpolators.hpp"

#include <string>

#include "aquanim/error.hpp"

namespace aquanim {

namespace {

double checked_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::DomainError,
                    std::string(name) + " must lie in [0,1], got " + std::to_string(v));
    }
    return v;
}

}  // namespace

TimeParam::TimeParam(double t) : t_(checked_unit(t, "time t")) {}

EasedTime::EasedTime(double u) : u_(checked_unit(u, "eased time u")) {}

EasedTime ease(TimeParam t) {
    const double x = t.value();
    // Endpoint values are exact in floating point for x == 0 and x == 1.
    return EasedTime(x * x * (3.0 - 2.0 * x));
}

EasedTime ease(double t) { return ease(TimeParam(t)); }

double lerp(double v0, double v1, EasedTime u) {
    const double w = u.value();
    return (1.0 - w) * v0 + w * v1;
}

double hyperbolic_extent(double area, double piston_extent) {
    if (!(piston_extent > kDegenerateExtent)) {
        throw Error(ErrorCode::DegenerateExtent,
                    "area-preserving reshape needs a piston extent above 1e-12, got " +
                        std::to_string(piston_extent));
    }
    if (area < 0.0) {
        throw Error(ErrorCode::DomainError, "area must be non-negative");
    }
    return area / piston_extent;
}

FreeEdges centered_pair(double c0, double c1, double free_extent, EasedTime u) {
    const double c = lerp(c0, c1, u);
    const double half = 0.5 * free_extent;
    return {c - half, c + half};
}

}  // namespace aquanim
