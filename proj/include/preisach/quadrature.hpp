#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace preisach::quadrature {

inline constexpr int kGaussLegendreOrder = 16;

struct GaussLegendreRule {
    std::array<double, kGaussLegendreOrder> nodes{};
    std::array<double, kGaussLegendreOrder> weights{};
};

// Nodes and weights on [-1, 1] via Newton iteration on P_n.
inline const GaussLegendreRule& gauss_legendre() {
    static const GaussLegendreRule rule = [] {
        GaussLegendreRule r;
        constexpr int n = kGaussLegendreOrder;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            r.nodes[i] = x;
            r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

/// Composite Gauss-Legendre over [a, b] with panels no wider than `max_panel`.
template <class F>
double integrate(F&& f, double a, double b, double max_panel) {
    if (!(b > a)) return 0.0;
    const auto& rule = gauss_legendre();
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel)));
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double s = 0.0;
        for (int i = 0; i < kGaussLegendreOrder; ++i) s += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
        total += 0.5 * h * s;
    }
    return total;
}

/// Integral of exp(-(x - c)^2 / (2 s^2)) over [a, b], using whichever erf form
/// keeps precision in the tails.
inline double gaussian_segment(double c, double s, double a, double b) {
    if (!(b > a)) return 0.0;
    const double k = s * std::sqrt(std::numbers::pi / 2.0);
    const double za = (a - c) / (s * std::numbers::sqrt2);
    const double zb = (b - c) / (s * std::numbers::sqrt2);
    if (za >= 0.0) return k * (std::erfc(za) - std::erfc(zb));
    if (zb <= 0.0) return k * (std::erfc(-zb) - std::erfc(-za));
    return k * (std::erf(zb) - std::erf(za));
}

}  // namespace preisach::quadrature
