#pragma once

// Output of the operator for a given memory state:
//   y = integral of mu over P+ minus integral over P-,
// with P+ the part of the half-plane below the interface. P+ splits into
// {alpha <= u, beta <= alpha} (u the current input) and one rectangle under
// each horizontal segment of the staircase.

#include "preisach/density.hpp"
#include "preisach/errors.hpp"
#include "preisach/memory_interface.hpp"

namespace preisach {

enum class Side { below, above };

namespace detail {

template <WeightingDensity W>
void require_support_inside(const W& mu, const MemoryInterface& iface) {
    if (!iface.support_box().contains(mu.support()))
        throw ConfigError("interface support box does not contain the weighting support");
}

template <WeightingDensity W>
double integrate_below(const W& mu, const MemoryInterface& iface) {
    const Box s = mu.support();
    const auto c = iface.corners();
    double total = mu.half_plane_integral({s.alpha_lo, std::min(s.alpha_hi, iface.input()), s.beta_lo, s.beta_hi});
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        if (c[i].beta != c[i + 1].beta) continue;
        total += mu.rect_integral({c[i].alpha, c[i + 1].alpha, s.beta_lo, c[i].beta});
    }
    return total;
}

template <WeightingDensity W>
double integrate_half_plane(const W& mu) {
    return mu.half_plane_integral(mu.support());
}

}  // namespace detail

/// Integral of mu over the region below (P+) or above (P-) the interface.
template <WeightingDensity W>
double integrate_staircase_region(const W& mu, const MemoryInterface& iface, Side side) {
    detail::require_support_inside(mu, iface);
    const double below = detail::integrate_below(mu, iface);
    return side == Side::below ? below : detail::integrate_half_plane(mu) - below;
}

template <WeightingDensity W>
double evaluate_output(const W& mu, const MemoryInterface& iface) {
    detail::require_support_inside(mu, iface);
    return 2.0 * detail::integrate_below(mu, iface) - detail::integrate_half_plane(mu);
}

}  // namespace preisach
