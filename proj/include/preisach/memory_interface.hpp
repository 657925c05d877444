#pragma once

// Staircase memory curve of a Preisach operator.
//
// The curve starts on the diagonal at (u, u), where u is the current input,
// and walks outward through axis-aligned segments with alpha nondecreasing and
// beta nonincreasing. After the last stored corner the curve continues as a
// vertical ray toward beta = -infinity; that ray is clamped to the floor of
// the support box wherever a finite endpoint is needed. Relays on the lower
// left of the curve are in the +1 state, the rest are -1.

#include "preisach/errors.hpp"
#include "preisach/geometry.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace preisach {

/// Vertex merge tolerance (absolute, input units).
inline constexpr double kVertexMergeTolerance = 1e-12;

class MemoryInterface {
public:
    /// State reached by raising the input from negative saturation to `input`:
    /// relays with alpha < input are +1, all others -1.
    static MemoryInterface virgin(const Box& support_box, double input = 0.0) {
        return MemoryInterface({PlanePoint{input, input}}, support_box);
    }

    /// Builds a canonical interface from an explicit corner list ordered from
    /// the diagonal outward. A trailing vertical segment is read as the tail.
    static MemoryInterface from_corners(std::vector<PlanePoint> corners, const Box& support_box) {
        if (corners.empty()) throw ConfigError("memory interface needs at least one corner");
        auto canonical = canonicalize(std::move(corners));
        validate(canonical);
        return MemoryInterface(std::move(canonical), support_box);
    }

    /// Replays an input history starting from negative saturation. The first
    /// value is the first maximum; the last value is the current input.
    static MemoryInterface from_extrema(std::span<const double> extrema, const Box& support_box);

    /// Interface with a horizontal shelf at `shelf_beta` spanning [0, alpha_end]
    /// and the vertical tail at alpha_end, joined to the origin by a vertical
    /// segment. This is the state left by the input history
    /// alpha_end -> shelf_beta -> 0.
    static MemoryInterface shelf(double shelf_beta, double alpha_end, const Box& support_box) {
        if (!(shelf_beta < 0.0) || !(alpha_end > 0.0))
            throw ConfigError("shelf preset needs shelf_beta < 0 < alpha_end");
        return from_corners({{0.0, 0.0}, {0.0, shelf_beta}, {alpha_end, shelf_beta}}, support_box);
    }

    std::span<const PlanePoint> corners() const noexcept { return corners_; }
    const Box& support_box() const noexcept { return box_; }

    /// Current input value, i.e. the diagonal vertex.
    double input() const noexcept { return corners_.front().alpha; }

    double tail_alpha() const noexcept { return corners_.back().alpha; }

    /// Lower end of the tail once clamped to the support box.
    double tail_floor() const noexcept { return std::min(corners_.back().beta, box_.beta_lo); }

    /// True when (0, 0) lies on the curve.
    bool passes_through_origin() const noexcept {
        return std::abs(corners_.front().alpha) <= kVertexMergeTolerance;
    }

    /// Corners plus the clamped tail endpoint.
    std::vector<PlanePoint> polyline() const {
        std::vector<PlanePoint> out(corners_.begin(), corners_.end());
        if (tail_floor() < corners_.back().beta) out.push_back({tail_alpha(), tail_floor()});
        return out;
    }

    bool approx_equal(const MemoryInterface& other, double tol = kVertexMergeTolerance) const noexcept {
        if (corners_.size() != other.corners_.size()) return false;
        for (std::size_t i = 0; i < corners_.size(); ++i) {
            if (std::abs(corners_[i].alpha - other.corners_[i].alpha) > tol ||
                std::abs(corners_[i].beta - other.corners_[i].beta) > tol)
                return false;
        }
        return true;
    }

    /// Rebinds the interface to another support box (corners unchanged).
    MemoryInterface with_box(const Box& box) const { return MemoryInterface(corners_, box); }

    /// Drops zero-length segments and collinear vertices, snaps near-equal
    /// coordinates, and strips a trailing vertical segment (the tail).
    static std::vector<PlanePoint> canonicalize(std::vector<PlanePoint> pts) {
        std::vector<PlanePoint> out;
        out.reserve(pts.size());
        for (const auto& p : pts) {
            if (!out.empty()) {
                const auto& q = out.back();
                if (std::abs(p.alpha - q.alpha) <= kVertexMergeTolerance &&
                    std::abs(p.beta - q.beta) <= kVertexMergeTolerance)
                    continue;
            }
            out.push_back(p);
        }
        // snap coordinates of axis-aligned neighbours
        for (std::size_t i = 1; i < out.size(); ++i) {
            if (std::abs(out[i].alpha - out[i - 1].alpha) <= kVertexMergeTolerance) out[i].alpha = out[i - 1].alpha;
            if (std::abs(out[i].beta - out[i - 1].beta) <= kVertexMergeTolerance) out[i].beta = out[i - 1].beta;
        }
        std::vector<PlanePoint> reduced;
        reduced.reserve(out.size());
        for (const auto& p : out) {
            while (reduced.size() >= 2) {
                const auto& a = reduced[reduced.size() - 2];
                const auto& b = reduced.back();
                const bool vertical = a.alpha == b.alpha && b.alpha == p.alpha;
                const bool horizontal = a.beta == b.beta && b.beta == p.beta;
                if (!vertical && !horizontal) break;
                reduced.pop_back();
            }
            reduced.push_back(p);
        }
        if (reduced.size() >= 2 && reduced[reduced.size() - 2].alpha == reduced.back().alpha &&
            reduced[reduced.size() - 2].beta > reduced.back().beta)
            reduced.pop_back();
        return reduced;
    }

private:
    MemoryInterface(std::vector<PlanePoint> corners, const Box& box) : corners_(std::move(corners)), box_(box) {}

    static void validate(const std::vector<PlanePoint>& c) {
        if (std::abs(c.front().alpha - c.front().beta) > kVertexMergeTolerance)
            throw ConfigError("first interface corner must lie on the diagonal alpha = beta");
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!std::isfinite(c[i].alpha) || !std::isfinite(c[i].beta))
                throw ConfigError("interface corners must be finite");
            if (i == 0) continue;
            const bool vertical = c[i].alpha == c[i - 1].alpha && c[i].beta < c[i - 1].beta;
            const bool horizontal = c[i].beta == c[i - 1].beta && c[i].alpha > c[i - 1].alpha;
            if (!vertical && !horizontal)
                throw ConfigError("interface must be an axis-aligned staircase with alpha nondecreasing and "
                                  "beta nonincreasing (corner " +
                                  std::to_string(i) + ")");
        }
    }

    std::vector<PlanePoint> corners_;
    Box box_;
};

/// Memory update for a monotone input sweep from the current input to `v`.
/// Dominated corners are wiped out.
inline MemoryInterface push_extremum(const MemoryInterface& iface, double v) {
    const auto c = iface.corners();
    const double u = iface.input();
    if (std::abs(v - u) <= kVertexMergeTolerance) return iface;

    std::vector<PlanePoint> next;
    next.reserve(c.size() + 2);
    next.push_back({v, v});
    if (v > u) {
        std::size_t j = 0;
        while (j < c.size() && !(c[j].alpha > v)) ++j;
        if (j < c.size()) {
            next.push_back({v, c[j].beta});
            next.insert(next.end(), c.begin() + static_cast<std::ptrdiff_t>(j), c.end());
        }
    } else {
        std::size_t j = 0;
        while (j < c.size() && !(c[j].beta < v)) ++j;
        if (j < c.size()) {
            next.push_back({c[j].alpha, v});
            next.insert(next.end(), c.begin() + static_cast<std::ptrdiff_t>(j), c.end());
        } else {
            next.push_back({c.back().alpha, v});
        }
    }
    return MemoryInterface::from_corners(std::move(next), iface.support_box());
}

inline MemoryInterface MemoryInterface::from_extrema(std::span<const double> extrema, const Box& support_box) {
    if (extrema.empty()) throw ConfigError("extremum sequence is empty");
    auto iface = virgin(support_box, extrema.front());
    for (std::size_t i = 1; i < extrema.size(); ++i) iface = push_extremum(iface, extrema[i]);
    return iface;
}

/// Initial relay state induced by the interface. Points on the curve count as +1.
inline RelaySign relay_state(PlanePoint p, const MemoryInterface& iface) noexcept {
    for (const auto& c : iface.corners()) {
        if (c.alpha >= p.alpha) return p.beta <= c.beta ? RelaySign::plus : RelaySign::minus;
    }
    return RelaySign::minus;
}

enum class EllSelector {
    beta_max,   ///< max beta on the vertical line alpha = value
    beta_min,   ///< min beta on the vertical line alpha = value
    alpha_max,  ///< max alpha on the horizontal line beta = value
    alpha_min,  ///< min alpha on the horizontal line beta = value
};

namespace detail {

// Extremes of the curve along a coordinate line; the tail extends to -infinity
// and is clamped at the support floor.
inline double ell_beta_max(const MemoryInterface& iface, double alpha) {
    for (const auto& c : iface.corners())
        if (c.alpha >= alpha) return c.beta;
    return iface.tail_floor();
}

inline double ell_beta_min(const MemoryInterface& iface, double alpha) {
    const auto c = iface.corners();
    if (alpha >= c.back().alpha) return iface.tail_floor();
    std::size_t last = 0;
    for (std::size_t i = 0; i < c.size() && c[i].alpha <= alpha; ++i) last = i;
    return c[last].beta;
}

inline double ell_alpha_max(const MemoryInterface& iface, double beta) {
    const auto c = iface.corners();
    std::size_t last = 0;
    for (std::size_t i = 0; i < c.size() && c[i].beta >= beta; ++i) last = i;
    return c[last].alpha;
}

inline double ell_alpha_min(const MemoryInterface& iface, double beta) {
    for (const auto& c : iface.corners())
        if (c.beta <= beta) return c.alpha;
    return iface.tail_alpha();
}

}  // namespace detail

/// Re-parameterisation of the curve along coordinate lines. Throws
/// OutOfRangeError when the line misses the clamped curve.
inline double interface_corners_ell(const MemoryInterface& iface, double axis_value, EllSelector which) {
    const double u = iface.input();
    switch (which) {
        case EllSelector::beta_max:
        case EllSelector::beta_min:
            if (axis_value < u || axis_value > iface.tail_alpha())
                throw OutOfRangeError("line alpha = " + std::to_string(axis_value) + " misses the interface");
            return which == EllSelector::beta_max ? detail::ell_beta_max(iface, axis_value)
                                                  : detail::ell_beta_min(iface, axis_value);
        case EllSelector::alpha_max:
        case EllSelector::alpha_min:
            if (axis_value > u || axis_value < iface.tail_floor())
                throw OutOfRangeError("line beta = " + std::to_string(axis_value) + " misses the interface");
            return which == EllSelector::alpha_max ? detail::ell_alpha_max(iface, axis_value)
                                                   : detail::ell_alpha_min(iface, axis_value);
    }
    return 0.0;
}

}  // namespace preisach
