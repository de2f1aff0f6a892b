#pragma once

#include <utility>

namespace aquanim {

/// Normalized time in [0,1]. Throws Error(DomainError) outside.
class TimeParam {
public:
    explicit TimeParam(double t);
    double value() const { return t_; }

private:
    double t_;
};

/// Eased progress in [0,1]. Throws Error(DomainError) outside.
class EasedTime {
public:
    explicit EasedTime(double u);
    double value() const { return u_; }

private:
    double u_;
};

/// Slow-in/slow-out cubic u(t) = 3t^2 - 2t^3.
EasedTime ease(TimeParam t);
/// Convenience overload; validates t.
EasedTime ease(double t);

/// (1-u) v0 + u v1.
double lerp(double v0, double v1, EasedTime u);

/// Extent along the free axis keeping `area` constant for a piston extent of
/// `piston_extent`. Throws Error(DegenerateExtent) when piston_extent <= 1e-12.
double hyperbolic_extent(double area, double piston_extent);

struct FreeEdges {
    double lo;
    double hi;
};

/// Free edge pair of extent `free_extent` centered on lerp(c0, c1, u).
FreeEdges centered_pair(double c0, double c1, double free_extent, EasedTime u);

inline constexpr double kDegenerateExtent = 1e-12;

}  // namespace aquanim
