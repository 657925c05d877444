#pragma once

#include "preisach/geometry.hpp"

#include <concepts>
#include <vector>

namespace preisach {

enum class Axis { alpha, beta };

/// Requirements on a weighting density mu(alpha, beta) with compact support.
///
///  - `rect_integral(r)`: integral over the rectangle r (no half-plane clipping).
///  - `half_plane_integral(r)`: integral over r intersected with {beta <= alpha}.
///  - `line_integral(along, fixed, lo, hi)`: integral along one axis with the
///    other coordinate held at `fixed`.
///  - `scan_lines` / `scan_limits`: positions used when extremising partial
///    line integrals. `scan_lines` gives the fixed coordinates of the scanned
///    lines; `scan_limits` gives candidate upper/lower limits along a line.
///  - `abs_mass()`: integral of |mu| over the half-plane (an upper bound when
///    signed components overlap).
template <class W>
concept WeightingDensity = requires(const W& w, PlanePoint p, Box b, Axis ax, double x, int n) {
    { w.support() } -> std::convertible_to<Box>;
    { w.value(p) } -> std::convertible_to<double>;
    { w.rect_integral(b) } -> std::convertible_to<double>;
    { w.half_plane_integral(b) } -> std::convertible_to<double>;
    { w.line_integral(ax, x, x, x) } -> std::convertible_to<double>;
    { w.scan_lines(ax, x, x, n) } -> std::convertible_to<std::vector<double>>;
    { w.scan_limits(ax, x, x, n) } -> std::convertible_to<std::vector<double>>;
    { w.abs_mass() } -> std::convertible_to<double>;
};

}  // namespace preisach
