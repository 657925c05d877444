#pragma once

#include <algorithm>
#include <cmath>

namespace preisach {

/// A relay in the Preisach plane: `alpha` is the switch-up threshold and
/// `beta` the switch-down threshold. Valid relays satisfy alpha >= beta.
struct PlanePoint {
    double alpha = 0.0;
    double beta = 0.0;

    constexpr bool in_half_plane() const noexcept { return alpha >= beta; }

    friend constexpr bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

enum class RelaySign : signed char { minus = -1, plus = 1 };

constexpr double signed_value(RelaySign s) noexcept { return static_cast<double>(s); }

/// Closed axis-aligned rectangle [alpha_lo, alpha_hi] x [beta_lo, beta_hi].
struct Box {
    double alpha_lo = 0.0;
    double alpha_hi = 0.0;
    double beta_lo = 0.0;
    double beta_hi = 0.0;

    constexpr double width() const noexcept { return alpha_hi - alpha_lo; }
    constexpr double height() const noexcept { return beta_hi - beta_lo; }

    /// True when the rectangle has no interior.
    constexpr bool empty() const noexcept { return !(alpha_lo < alpha_hi && beta_lo < beta_hi); }

    constexpr double area() const noexcept { return empty() ? 0.0 : width() * height(); }

    constexpr bool contains(PlanePoint p) const noexcept {
        return p.alpha >= alpha_lo && p.alpha <= alpha_hi && p.beta >= beta_lo && p.beta <= beta_hi;
    }

    bool contains(const Box& other, double tol = 1e-12) const noexcept {
        const double scale = 1.0 + std::max({std::abs(alpha_lo), std::abs(alpha_hi), std::abs(beta_lo),
                                             std::abs(beta_hi)});
        const double slack = tol * scale;
        return other.alpha_lo >= alpha_lo - slack && other.alpha_hi <= alpha_hi + slack &&
               other.beta_lo >= beta_lo - slack && other.beta_hi <= beta_hi + slack;
    }

    constexpr Box intersect(const Box& o) const noexcept {
        return {std::max(alpha_lo, o.alpha_lo), std::min(alpha_hi, o.alpha_hi), std::max(beta_lo, o.beta_lo),
                std::min(beta_hi, o.beta_hi)};
    }

    friend constexpr bool operator==(const Box&, const Box&) = default;
};

/// Area of the part of [a0, a1] x [b0, b1] that lies in the half-plane beta <= alpha.
inline double area_below_diagonal(double a0, double a1, double b0, double b1) noexcept {
    if (!(a0 < a1) || !(b0 < b1)) return 0.0;
    const double h = b1 - b0;
    // antiderivative of clamp(alpha - b0, 0, h)
    auto antiderivative = [&](double a) {
        if (a <= b0) return 0.0;
        if (a <= b1) return 0.5 * (a - b0) * (a - b0);
        return 0.5 * h * h + h * (a - b1);
    };
    return antiderivative(a1) - antiderivative(a0);
}

}  // namespace preisach
