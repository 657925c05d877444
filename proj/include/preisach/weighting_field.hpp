#pragma once

#include "preisach/density.hpp"
#include "preisach/gaussian_mixture.hpp"
#include "preisach/grid_field.hpp"

#include <variant>

namespace preisach {

/// Either a gridded or an analytic weighting, behind one value type.
class WeightingField {
public:
    WeightingField(GridField g) : impl_(std::move(g)) {}          // NOLINT(google-explicit-constructor)
    WeightingField(GaussianMixture m) : impl_(std::move(m)) {}    // NOLINT(google-explicit-constructor)

    bool is_grid() const noexcept { return std::holds_alternative<GridField>(impl_); }
    const GridField* grid() const noexcept { return std::get_if<GridField>(&impl_); }
    const GaussianMixture* analytic() const noexcept { return std::get_if<GaussianMixture>(&impl_); }

    Box support() const {
        return std::visit([](const auto& f) { return f.support(); }, impl_);
    }
    double value(PlanePoint p) const {
        return std::visit([&](const auto& f) { return f.value(p); }, impl_);
    }
    double rect_integral(const Box& r) const {
        return std::visit([&](const auto& f) { return f.rect_integral(r); }, impl_);
    }
    double half_plane_integral(const Box& r) const {
        return std::visit([&](const auto& f) { return f.half_plane_integral(r); }, impl_);
    }
    double line_integral(Axis along, double fixed, double lo, double hi) const {
        return std::visit([&](const auto& f) { return f.line_integral(along, fixed, lo, hi); }, impl_);
    }
    std::vector<double> scan_lines(Axis axis, double lo, double hi, int resolution) const {
        return std::visit([&](const auto& f) { return f.scan_lines(axis, lo, hi, resolution); }, impl_);
    }
    std::vector<double> scan_limits(Axis axis, double lo, double hi, int resolution) const {
        return std::visit([&](const auto& f) { return f.scan_limits(axis, lo, hi, resolution); }, impl_);
    }
    double abs_mass() const {
        return std::visit([](const auto& f) { return f.abs_mass(); }, impl_);
    }

private:
    std::variant<GridField, GaussianMixture> impl_;
};

static_assert(WeightingDensity<GridField>);
static_assert(WeightingDensity<GaussianMixture>);
static_assert(WeightingDensity<WeightingField>);

/// mu(p); exactly zero outside the support box.
template <WeightingDensity W>
double eval_mu(const W& mu, PlanePoint p) {
    return mu.value(p);
}

/// Constant `value` on `box`, stored as a single grid cell.
inline GridField uniform_field(const Box& box, double value = 1.0) { return GridField(box, 1, 1, {value}); }

}  // namespace preisach
