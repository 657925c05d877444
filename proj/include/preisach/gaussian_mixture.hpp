#pragma once

// Weighting built from signed, axis-aligned Gaussian bumps. Each bump is cut
// off outside its own clip rectangle so that lobes of opposite sign can be
// kept on disjoint parts of the plane.
//
// Rectangle and line integrals are closed-form (erf). The part of a clip
// rectangle cut by the diagonal uses composite 16-point Gauss-Legendre on
// panels no wider than a quarter of the smaller width.

#include "preisach/density.hpp"
#include "preisach/errors.hpp"
#include "preisach/geometry.hpp"
#include "preisach/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace preisach {

struct GaussianComponent {
    double amplitude = 0.0;
    PlanePoint center;
    double sigma_alpha = 1.0;
    double sigma_beta = 1.0;
    Box clip;  ///< the component is zero outside this rectangle
};

class GaussianMixture {
public:
    GaussianMixture(const Box& support, std::vector<GaussianComponent> components)
        : box_(support), comps_(std::move(components)) {
        if (box_.empty()) throw ConfigError("analytic support box must have positive area");
        for (auto& c : comps_) {
            if (!(c.sigma_alpha > 0.0) || !(c.sigma_beta > 0.0) || !std::isfinite(c.amplitude))
                throw ConfigError("Gaussian component needs positive widths and a finite amplitude");
            c.clip = c.clip.intersect(box_);
        }
    }

    const Box& support() const noexcept { return box_; }
    const std::vector<GaussianComponent>& components() const noexcept { return comps_; }

    double value(PlanePoint p) const noexcept {
        if (!box_.contains(p)) return 0.0;
        double v = 0.0;
        for (const auto& c : comps_) {
            if (c.clip.empty() || !c.clip.contains(p)) continue;
            const double za = (p.alpha - c.center.alpha) / c.sigma_alpha;
            const double zb = (p.beta - c.center.beta) / c.sigma_beta;
            v += c.amplitude * std::exp(-0.5 * (za * za + zb * zb));
        }
        return v;
    }

    double rect_integral(const Box& r) const noexcept {
        double total = 0.0;
        for (const auto& c : comps_) {
            const Box q = r.intersect(c.clip);
            if (q.empty()) continue;
            total += c.amplitude * seg_alpha(c, q.alpha_lo, q.alpha_hi) * seg_beta(c, q.beta_lo, q.beta_hi);
        }
        return total;
    }

    double half_plane_integral(const Box& r) const {
        double total = 0.0;
        for (const auto& c : comps_) total += c.amplitude * half_plane_unit(c, r);
        return total;
    }

    double line_integral(Axis along, double fixed, double lo, double hi) const noexcept {
        double total = 0.0;
        for (const auto& c : comps_) {
            if (c.clip.empty()) continue;
            if (along == Axis::beta) {
                if (fixed < c.clip.alpha_lo || fixed > c.clip.alpha_hi) continue;
                const double z = (fixed - c.center.alpha) / c.sigma_alpha;
                total += c.amplitude * std::exp(-0.5 * z * z) *
                         seg_beta(c, std::max(lo, c.clip.beta_lo), std::min(hi, c.clip.beta_hi));
            } else {
                if (fixed < c.clip.beta_lo || fixed > c.clip.beta_hi) continue;
                const double z = (fixed - c.center.beta) / c.sigma_beta;
                total += c.amplitude * std::exp(-0.5 * z * z) *
                         seg_alpha(c, std::max(lo, c.clip.alpha_lo), std::min(hi, c.clip.alpha_hi));
            }
        }
        return total;
    }

    /// `resolution` uniform positions over [lo, hi] plus component centres and
    /// clip edges that fall inside.
    std::vector<double> scan_lines(Axis axis, double lo, double hi, int resolution) const {
        std::vector<double> out;
        const int n = std::max(resolution, 2);
        if (hi > lo) {
            for (int k = 0; k < n; ++k) out.push_back(lo + (hi - lo) * k / (n - 1));
        } else {
            out.push_back(lo);
        }
        for (const auto& c : comps_) {
            const bool a = axis == Axis::alpha;
            for (double x : {a ? c.center.alpha : c.center.beta, a ? c.clip.alpha_lo : c.clip.beta_lo,
                             a ? c.clip.alpha_hi : c.clip.beta_hi})
                if (x > lo && x < hi) out.push_back(x);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::vector<double> scan_limits(Axis axis, double lo, double hi, int resolution) const {
        return scan_lines(axis, lo, hi, resolution);
    }

    double abs_mass() const {
        double total = 0.0;
        for (const auto& c : comps_) total += std::abs(c.amplitude) * half_plane_unit(c, box_);
        return total;
    }

private:
    static double seg_alpha(const GaussianComponent& c, double a, double b) noexcept {
        return quadrature::gaussian_segment(c.center.alpha, c.sigma_alpha, a, b);
    }
    static double seg_beta(const GaussianComponent& c, double a, double b) noexcept {
        return quadrature::gaussian_segment(c.center.beta, c.sigma_beta, a, b);
    }

    // Unit-amplitude integral of one component over r intersected with {beta <= alpha}.
    static double half_plane_unit(const GaussianComponent& c, const Box& r) {
        const Box q = r.intersect(c.clip);
        if (q.empty()) return 0.0;
        const double a0 = q.alpha_lo, a1 = q.alpha_hi, b0 = q.beta_lo, b1 = q.beta_hi;
        double total = 0.0;
        // columns entirely above the clip top: full beta range
        const double full_lo = std::max(a0, b1);
        if (a1 > full_lo) total += seg_alpha(c, full_lo, a1) * seg_beta(c, b0, b1);
        // columns crossing the diagonal: beta from b0 up to alpha
        const double cut_lo = std::max(a0, b0);
        const double cut_hi = std::min(a1, b1);
        if (cut_hi > cut_lo) {
            const double panel = 0.25 * std::min(c.sigma_alpha, c.sigma_beta);
            total += quadrature::integrate(
                [&](double a) {
                    const double z = (a - c.center.alpha) / c.sigma_alpha;
                    return std::exp(-0.5 * z * z) * seg_beta(c, b0, a);
                },
                cut_lo, cut_hi, panel);
        }
        return total;
    }

    Box box_;
    std::vector<GaussianComponent> comps_;
};

}  // namespace preisach
