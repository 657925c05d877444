#pragma once

// Sector bounds on the remnant increment per unit change of pulse amplitude.
//
// For a positive step the switched region is a union of columns
// {alpha fixed, beta in [l(alpha), 0]}, so the increment per unit alpha lies
// between twice the min and twice the max of
//     I_col(alpha, b1) = int_{b1}^{0} mu(alpha, beta) dbeta
// over the scanned domain. Negative steps use rows and
//     I_row(beta, a1) = int_{0}^{a1} mu(alpha, beta) dalpha.
// Both are evaluated as cumulative sums between consecutive scan limits.

#include "preisach/density.hpp"
#include "preisach/errors.hpp"
#include "preisach/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace preisach {

/// Box [0, alpha2] x [beta2, 0] on which mu is expected to be sign-definite.
struct QRegion {
    double alpha2 = 1.0;
    double beta2 = -1.0;

    QRegion() = default;
    QRegion(double a2, double b2) : alpha2(a2), beta2(b2) {
        if (!(a2 > 0.0) || !(b2 < 0.0) || !std::isfinite(a2) || !std::isfinite(b2))
            throw ConfigError("Q region needs alpha2 > 0 and beta2 < 0");
    }

    Box box() const noexcept { return {0.0, alpha2, beta2, 0.0}; }
};

struct SectorBounds {
    double gamma1_plus = 0.0;   ///< 2 min of column integrals over supp(mu) in the relay quadrant
    double gamma2_plus = 0.0;   ///< 2 max of column integrals
    double gamma1_minus = 0.0;  ///< 2 max of row integrals
    double gamma2_minus = 0.0;  ///< 2 min of row integrals
    double gamma1_plus_q = 0.0;
    double gamma2_plus_q = 0.0;
    double gamma1_minus_q = 0.0;
    double gamma2_minus_q = 0.0;
};

inline constexpr int kDefaultScanResolution = 512;

namespace detail {

struct ScanExtremes {
    double min = 0.0;
    double max = 0.0;
};

// Extremes over lines at `line_axis` positions in [line_lo, line_hi] of the
// partial integrals from 0 toward the far limit in [lim_lo, lim_hi].
template <WeightingDensity W>
ScanExtremes scan_partial_integrals(const W& mu, Axis line_axis, double line_lo, double line_hi, double lim_lo,
                                    double lim_hi, int resolution) {
    const Axis along = line_axis == Axis::alpha ? Axis::beta : Axis::alpha;
    const auto lines = mu.scan_lines(line_axis, line_lo, line_hi, resolution);
    auto limits = mu.scan_limits(along, lim_lo, lim_hi, resolution);
    ScanExtremes ext;
    if (line_axis == Axis::alpha) {
        // columns: integrate from 0 downward, limits in [lim_lo, 0]
        std::sort(limits.begin(), limits.end(), std::greater<>());
        for (double a : lines) {
            double acc = 0.0, prev = 0.0;
            for (double b : limits) {
                if (b > prev) continue;
                acc += mu.line_integral(Axis::beta, a, b, prev);
                prev = b;
                ext.min = std::min(ext.min, acc);
                ext.max = std::max(ext.max, acc);
            }
        }
    } else {
        // rows: integrate from 0 rightward, limits in [0, lim_hi]
        std::sort(limits.begin(), limits.end());
        for (double b : lines) {
            double acc = 0.0, prev = 0.0;
            for (double a : limits) {
                if (a < prev) continue;
                acc += mu.line_integral(Axis::alpha, b, prev, a);
                prev = a;
                ext.min = std::min(ext.min, acc);
                ext.max = std::max(ext.max, acc);
            }
        }
    }
    return ext;
}

}  // namespace detail

/// Computes the general bounds over supp(mu) in the relay quadrant
/// {alpha >= 0, beta <= 0} and the Q-restricted bounds.
/// Throws EmptyIntersectionError when either domain is empty.
template <WeightingDensity W>
SectorBounds sector_bounds(const W& mu, const QRegion& q, int resolution = kDefaultScanResolution) {
    if (resolution < 1) throw ConfigError("scan resolution must be positive");
    const Box s = mu.support();
    const double a_lo = std::max(0.0, s.alpha_lo), a_hi = s.alpha_hi;
    const double b_lo = s.beta_lo, b_hi = std::min(0.0, s.beta_hi);
    if (a_lo > a_hi || b_lo > b_hi)
        throw EmptyIntersectionError("weighting support does not meet the quadrant alpha >= 0, beta <= 0");
    const double qa_hi = std::min(q.alpha2, a_hi);
    const double qb_lo = std::max(q.beta2, b_lo);
    if (a_lo > qa_hi || qb_lo > b_hi) throw EmptyIntersectionError("Q region does not meet the weighting support");

    SectorBounds out;
    const auto col = detail::scan_partial_integrals(mu, Axis::alpha, a_lo, a_hi, b_lo, b_hi, resolution);
    const auto row = detail::scan_partial_integrals(mu, Axis::beta, b_lo, b_hi, a_lo, a_hi, resolution);
    out.gamma1_plus = 2.0 * col.min;
    out.gamma2_plus = 2.0 * col.max;
    out.gamma1_minus = 2.0 * row.max;
    out.gamma2_minus = 2.0 * row.min;

    const auto qcol = detail::scan_partial_integrals(mu, Axis::alpha, a_lo, qa_hi, qb_lo, b_hi, resolution);
    const auto qrow = detail::scan_partial_integrals(mu, Axis::beta, qb_lo, b_hi, a_lo, qa_hi, resolution);
    out.gamma1_plus_q = 2.0 * qcol.min;
    out.gamma2_plus_q = 2.0 * qcol.max;
    out.gamma1_minus_q = 2.0 * qrow.max;
    out.gamma2_minus_q = 2.0 * qrow.min;
    return out;
}

enum class SignMode { positive, negative };

/// Checks that mu has the sign required by `mode` on Q, sampling a
/// `resolution` x `resolution` lattice of cell centres plus scan positions.
template <WeightingDensity W>
bool sign_definite_on(const W& mu, const QRegion& q, SignMode mode, int resolution = 100) {
    const double sgn = mode == SignMode::positive ? 1.0 : -1.0;
    std::vector<double> as, bs;
    for (int k = 0; k < resolution; ++k) {
        as.push_back(q.alpha2 * (k + 0.5) / resolution);
        bs.push_back(q.beta2 * (k + 0.5) / resolution);
    }
    for (double a : mu.scan_lines(Axis::alpha, 0.0, q.alpha2, resolution))
        if (a > 0.0 && a < q.alpha2) as.push_back(a);
    for (double b : mu.scan_lines(Axis::beta, q.beta2, 0.0, resolution))
        if (b > q.beta2 && b < 0.0) bs.push_back(b);
    for (double a : as)
        for (double b : bs)
            if (sgn * mu.value({a, b}) < 0.0) return false;
    return true;
}

}  // namespace preisach
