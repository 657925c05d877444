#pragma once

// Remnant of a Preisach operator under single triangular pulses.
//
// A pulse of amplitude w started and ended at zero input acts on the memory
// as two sweeps: 0 -> w -> 0. The remnant gamma(w, I) is the output once the
// input is back at zero.

#include "preisach/density.hpp"
#include "preisach/errors.hpp"
#include "preisach/memory_interface.hpp"
#include "preisach/sector_bounds.hpp"
#include "preisach/staircase_integration.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace preisach {

inline MemoryInterface apply_pulse(const MemoryInterface& iface, double w) {
    if (!iface.passes_through_origin())
        throw AdmissibilityError("pulse needs an interface through (0, 0) (input at zero)");
    if (w == 0.0) return iface;
    return push_extremum(push_extremum(iface, w), 0.0);
}

struct RemnantResult {
    double gamma;
    MemoryInterface next;
};

template <WeightingDensity W>
RemnantResult remnant(const W& mu, const MemoryInterface& iface, double w) {
    auto next = apply_pulse(iface, w);
    const double g = evaluate_output(mu, next);
    return {g, std::move(next)};
}

/// Remnant change caused by a pulse of amplitude `w_next` applied to
/// `iface_next`, computed directly from the switched region:
///   w > M:  +2 int_M^w int_{l_beta^M(alpha)}^0 mu dbeta dalpha
///   w < m:  -2 int_w^m int_0^{l_alpha^m(beta)} mu dalpha dbeta
///   else:   0
/// with M the alpha-extent of the curve on beta = 0 and m its beta-extent on
/// alpha = 0. The inner limits are piecewise constant, so the double integral
/// splits exactly into rectangles between consecutive corner coordinates.
template <WeightingDensity W>
double delta_remnant_explicit(const W& mu, const MemoryInterface& iface_next, double w_next) {
    if (!iface_next.passes_through_origin())
        throw AdmissibilityError("remnant difference needs an interface through (0, 0)");
    const Box s = mu.support();
    const double big_m = detail::ell_alpha_max(iface_next, 0.0);
    const double small_m = detail::ell_beta_min(iface_next, 0.0);
    const auto corners = iface_next.corners();

    if (w_next > big_m) {
        std::vector<double> cuts{big_m};
        for (const auto& c : corners)
            if (c.alpha > big_m && c.alpha < w_next) cuts.push_back(c.alpha);
        cuts.push_back(w_next);
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
            // past the tail the whole column down to the support floor switches
            const double floor_beta = mid < iface_next.tail_alpha() ? detail::ell_beta_max(iface_next, mid)
                                                                    : std::min(s.beta_lo, iface_next.tail_floor());
            total += mu.rect_integral({cuts[i], cuts[i + 1], floor_beta, 0.0});
        }
        return 2.0 * total;
    }
    if (w_next < small_m) {
        std::vector<double> cuts{w_next};
        for (const auto& c : corners)
            if (c.beta > w_next && c.beta < small_m) cuts.push_back(c.beta);
        cuts.push_back(small_m);
        std::sort(cuts.begin(), cuts.end());
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
            total += mu.rect_integral({0.0, detail::ell_alpha_min(iface_next, mid), cuts[i], cuts[i + 1]});
        }
        return -2.0 * total;
    }
    return 0.0;
}

/// True iff the interface passes through the origin and no point of its
/// polyline (tail clamped to the support floor) lies in
///   {alpha > alpha2, beta2 < beta <= 0}  or  {beta < beta2, 0 <= alpha < alpha2}.
inline bool validate_initial_interface(const MemoryInterface& iface, const QRegion& q) {
    if (!iface.passes_through_origin()) return false;
    const auto pts = iface.polyline();
    auto hits_strip = [&](PlanePoint a, PlanePoint b) {
        const double alo = std::min(a.alpha, b.alpha), ahi = std::max(a.alpha, b.alpha);
        const double blo = std::min(a.beta, b.beta), bhi = std::max(a.beta, b.beta);
        const bool right_strip = ahi > q.alpha2 && bhi > q.beta2 && blo <= 0.0;
        const bool lower_strip = blo < q.beta2 && alo < q.alpha2 && ahi >= 0.0;
        return right_strip || lower_strip;
    };
    if (pts.size() == 1) return !hits_strip(pts[0], pts[0]);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (hits_strip(pts[i], pts[i + 1])) return false;
    return true;
}

struct RemnantExtrema {
    double gamma_max;
    double gamma_min;
};

/// gamma_max = gamma(alpha2, I0), gamma_min = gamma(beta2, I0).
template <WeightingDensity W>
RemnantExtrema remnant_extrema(const W& mu, const MemoryInterface& iface0, const QRegion& q) {
    if (!validate_initial_interface(iface0, q))
        throw AdmissibilityError("initial interface intrudes into the strips beside Q; apply one pulse of "
                                 "amplitude alpha2 or beta2 first");
    return {remnant(mu, iface0, q.alpha2).gamma, remnant(mu, iface0, q.beta2).gamma};
}

/// Supremum of admissible adaptation gains.
inline double max_gain(const SectorBounds& b, SignMode mode = SignMode::positive) {
    const double slope = mode == SignMode::positive ? std::max(b.gamma2_plus_q, b.gamma1_minus_q)
                                                    : std::abs(std::min(b.gamma2_minus_q, b.gamma1_plus_q));
    if (!(slope > 0.0) || !std::isfinite(slope))
        throw DegenerateBoundsError("sector bounds on Q vanish; the remnant cannot be steered");
    return 2.0 / slope;
}

}  // namespace preisach
