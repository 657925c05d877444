#pragma once

// Piecewise-constant weighting on a uniform n_alpha x n_beta lattice of cells.
// Integrals over rectangles and staircase regions are exact up to rounding:
// the cumulative mass F(a, b) is bilinear inside every cell, so it is
// recovered exactly from a 2-D prefix table.

#include "preisach/density.hpp"
#include "preisach/errors.hpp"
#include "preisach/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace preisach {

class GridField {
public:
    /// `values` is row-major: row j (fixed beta, ascending) holds n_alpha cells
    /// in ascending alpha.
    GridField(const Box& box, int n_alpha, int n_beta, std::vector<double> values)
        : box_(box), na_(n_alpha), nb_(n_beta), values_(std::move(values)) {
        if (n_alpha < 1 || n_beta < 1) throw ConfigError("grid dimensions must be at least 1x1");
        if (box.empty()) throw ConfigError("grid support box must have positive area");
        if (values_.size() != static_cast<std::size_t>(na_) * static_cast<std::size_t>(nb_))
            throw ConfigError("grid value count does not match n_alpha * n_beta");
        for (double v : values_)
            if (!std::isfinite(v)) throw ConfigError("grid values must be finite");
        da_ = box_.width() / na_;
        db_ = box_.height() / nb_;
        build_tables();
    }

    const Box& support() const noexcept { return box_; }
    int n_alpha() const noexcept { return na_; }
    int n_beta() const noexcept { return nb_; }
    double cell_value(int i, int j) const { return values_[idx(i, j)]; }
    const std::vector<double>& values() const noexcept { return values_; }

    double alpha_edge(int i) const noexcept { return i == na_ ? box_.alpha_hi : box_.alpha_lo + i * da_; }
    double beta_edge(int j) const noexcept { return j == nb_ ? box_.beta_hi : box_.beta_lo + j * db_; }

    double value(PlanePoint p) const noexcept {
        if (!box_.contains(p)) return 0.0;
        return values_[idx(col(p.alpha), row(p.beta))];
    }

    double rect_integral(const Box& r) const noexcept {
        const Box c = r.intersect(box_);
        if (c.empty()) return 0.0;
        return cumulative(c.alpha_hi, c.beta_hi) - cumulative(c.alpha_lo, c.beta_hi) -
               cumulative(c.alpha_hi, c.beta_lo) + cumulative(c.alpha_lo, c.beta_lo);
    }

    double half_plane_integral(const Box& r) const noexcept {
        const Box c = r.intersect(box_);
        if (c.empty()) return 0.0;
        double total = 0.0;
        for (int i = col(c.alpha_lo); i <= col(c.alpha_hi); ++i) {
            const double x0 = std::max(c.alpha_lo, alpha_edge(i));
            const double x1 = std::min(c.alpha_hi, alpha_edge(i + 1));
            if (!(x1 > x0)) continue;
            const double full_top = std::min(c.beta_hi, x0);
            if (full_top > c.beta_lo) total += rect_integral({x0, x1, c.beta_lo, full_top});
            const double band_lo = std::max(c.beta_lo, x0);
            const double band_hi = std::min(c.beta_hi, x1);
            if (!(band_hi > band_lo)) continue;
            for (int j = row(band_lo); j <= row(band_hi); ++j) {
                const double y0 = std::max(band_lo, beta_edge(j));
                const double y1 = std::min(band_hi, beta_edge(j + 1));
                if (y1 > y0) total += values_[idx(i, j)] * area_below_diagonal(x0, x1, y0, y1);
            }
        }
        return total;
    }

    double line_integral(Axis along, double fixed, double lo, double hi) const noexcept {
        if (along == Axis::beta) {
            if (fixed < box_.alpha_lo || fixed > box_.alpha_hi) return 0.0;
            const int i = col(fixed);
            return column_cumulative(i, hi) - column_cumulative(i, lo);
        }
        if (fixed < box_.beta_lo || fixed > box_.beta_hi) return 0.0;
        const int j = row(fixed);
        return row_cumulative(j, hi) - row_cumulative(j, lo);
    }

    /// One line through the interior of every column (or row) meeting [lo, hi].
    /// The lattice makes line integrals constant across a column, so this
    /// scan is exact; `resolution` is not needed.
    std::vector<double> scan_lines(Axis axis, double lo, double hi, int /*resolution*/) const {
        const bool a = axis == Axis::alpha;
        const double blo = a ? box_.alpha_lo : box_.beta_lo;
        const double bhi = a ? box_.alpha_hi : box_.beta_hi;
        const int n = a ? na_ : nb_;
        std::vector<double> out;
        const double clo = std::max(lo, blo), chi = std::min(hi, bhi);
        if (!(chi > clo)) {
            out.push_back(lo);
            return out;
        }
        for (int k = 0; k < n; ++k) {
            const double e0 = std::max(clo, a ? alpha_edge(k) : beta_edge(k));
            const double e1 = std::min(chi, a ? alpha_edge(k + 1) : beta_edge(k + 1));
            if (e1 > e0) out.push_back(0.5 * (e0 + e1));
        }
        return out;
    }

    /// Range ends plus every cell edge strictly inside (lo, hi).
    std::vector<double> scan_limits(Axis axis, double lo, double hi, int /*resolution*/) const {
        const bool a = axis == Axis::alpha;
        const int n = a ? na_ : nb_;
        std::vector<double> out{lo};
        for (int k = 0; k <= n; ++k) {
            const double e = a ? alpha_edge(k) : beta_edge(k);
            if (e > lo && e < hi) out.push_back(e);
        }
        if (hi > lo) out.push_back(hi);
        return out;
    }

    double abs_mass() const noexcept {
        double total = 0.0;
        for (int j = 0; j < nb_; ++j)
            for (int i = 0; i < na_; ++i)
                total += std::abs(values_[idx(i, j)]) *
                         area_below_diagonal(alpha_edge(i), alpha_edge(i + 1), beta_edge(j), beta_edge(j + 1));
        return total;
    }

private:
    std::size_t idx(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(na_) + static_cast<std::size_t>(i);
    }

    int col(double a) const noexcept {
        return std::clamp(static_cast<int>(std::floor((a - box_.alpha_lo) / da_)), 0, na_ - 1);
    }
    int row(double b) const noexcept {
        return std::clamp(static_cast<int>(std::floor((b - box_.beta_lo) / db_)), 0, nb_ - 1);
    }

    void build_tables() {
        const auto w = static_cast<std::size_t>(na_ + 1);
        prefix_.assign(w * static_cast<std::size_t>(nb_ + 1), 0.0);
        const double cell_area = da_ * db_;
        for (int j = 0; j < nb_; ++j) {
            double row_sum = 0.0;
            for (int i = 0; i < na_; ++i) {
                row_sum += values_[idx(i, j)] * cell_area;
                prefix_[(j + 1) * w + (i + 1)] = prefix_[j * w + (i + 1)] + row_sum;
            }
        }
        col_prefix_.assign(static_cast<std::size_t>(na_) * (nb_ + 1), 0.0);
        for (int i = 0; i < na_; ++i)
            for (int j = 0; j < nb_; ++j)
                col_prefix_[i * (nb_ + 1) + j + 1] = col_prefix_[i * (nb_ + 1) + j] + values_[idx(i, j)] * db_;
        row_prefix_.assign(static_cast<std::size_t>(nb_) * (na_ + 1), 0.0);
        for (int j = 0; j < nb_; ++j)
            for (int i = 0; i < na_; ++i)
                row_prefix_[j * (na_ + 1) + i + 1] = row_prefix_[j * (na_ + 1) + i] + values_[idx(i, j)] * da_;
    }

    // F(a, b): mass of [alpha_lo, a] x [beta_lo, b], bilinear inside each cell.
    double cumulative(double a, double b) const noexcept {
        const double x = std::clamp((a - box_.alpha_lo) / da_, 0.0, static_cast<double>(na_));
        const double y = std::clamp((b - box_.beta_lo) / db_, 0.0, static_cast<double>(nb_));
        const int i = std::min(static_cast<int>(x), na_ - 1);
        const int j = std::min(static_cast<int>(y), nb_ - 1);
        const double fx = x - i, fy = y - j;
        const auto w = static_cast<std::size_t>(na_ + 1);
        const double s00 = prefix_[j * w + i], s10 = prefix_[j * w + i + 1];
        const double s01 = prefix_[(j + 1) * w + i], s11 = prefix_[(j + 1) * w + i + 1];
        return s00 + fx * (s10 - s00) + fy * (s01 - s00) + fx * fy * (s11 - s10 - s01 + s00);
    }

    double column_cumulative(int i, double b) const noexcept {
        const double y = std::clamp((b - box_.beta_lo) / db_, 0.0, static_cast<double>(nb_));
        const int j = std::min(static_cast<int>(y), nb_ - 1);
        const double* c = &col_prefix_[static_cast<std::size_t>(i) * (nb_ + 1)];
        return c[j] + (y - j) * (c[j + 1] - c[j]);
    }

    double row_cumulative(int j, double a) const noexcept {
        const double x = std::clamp((a - box_.alpha_lo) / da_, 0.0, static_cast<double>(na_));
        const int i = std::min(static_cast<int>(x), na_ - 1);
        const double* r = &row_prefix_[static_cast<std::size_t>(j) * (na_ + 1)];
        return r[i] + (x - i) * (r[i + 1] - r[i]);
    }

    Box box_;
    int na_;
    int nb_;
    double da_ = 0.0;
    double db_ = 0.0;
    std::vector<double> values_;
    std::vector<double> prefix_;
    std::vector<double> col_prefix_;
    std::vector<double> row_prefix_;
};

}  // namespace preisach
