#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "abperc/geometry.hpp"
#include "abperc/pointprocess.hpp"

namespace abperc {

/// Uniform bucket grid over a PointSet's window. Immutable after
/// construction; keeps its own cell-ordered copy of the coordinates.
class SpatialIndex {
public:
    /// cell_size is a lower bound on the bucket width; it is enlarged when
    /// the grid would otherwise hold far more cells than points.
    SpatialIndex(const PointSet& ps, double cell_size);
    /// Index under an explicit metric; a toroidal metric requires every
    /// window extent to equal the torus side.
    SpatialIndex(const PointSet& ps, double cell_size, Metric metric);

    const Metric& metric() const { return metric_; }
    int dim() const { return dim_; }
    std::size_t size() const { return ids_.size(); }
    double cell_width(int axis) const { return width_[axis]; }
    /// Largest possible distance between two points of the window.
    double diameter() const { return diameter_; }

    /// Calls f(id, squared_distance) for every point with distance <= rho
    /// (up to kDistanceSlack).
    template <class F>
    void for_each_within(ConstPoint x, double rho, F&& f) const;

    /// Ids within closed distance rho of x, ascending.
    std::vector<std::uint32_t> range_query(ConstPoint x, double rho) const;

    std::size_t count_within(ConstPoint x, double rho) const {
        std::size_t n = 0;
        for_each_within(x, rho, [&n](std::uint32_t, double) { ++n; });
        return n;
    }

private:
    int dim_;
    Metric metric_;
    std::array<double, kMaxDim> low_{};
    std::array<double, kMaxDim> width_{};
    std::array<int, kMaxDim> cells_{};
    std::array<std::size_t, kMaxDim> stride_{};
    double diameter_ = 0.0;
    std::vector<std::uint32_t> cell_begin_;
    std::vector<std::uint32_t> ids_;
    std::vector<double> coords_;
};

template <class F>
void SpatialIndex::for_each_within(ConstPoint x, double rho, F&& f) const {
    if (ids_.empty() || rho < 0.0) return;
    std::array<long, kMaxDim> start{};
    std::array<long, kMaxDim> count{};
    const bool wrap = metric_.wraps();
    for (int a = 0; a < dim_; ++a) {
        const long m = cells_[a];
        if (wrap) {
            const long reach = static_cast<long>(std::ceil(rho / width_[a]));
            if (2 * reach + 1 >= m) {
                start[a] = 0;
                count[a] = m;
            } else {
                long c = static_cast<long>(std::floor((x[a] - low_[a]) / width_[a]));
                c = std::clamp(c, 0L, m - 1);
                start[a] = c - reach;
                count[a] = 2 * reach + 1;
            }
        } else {
            const double lo_f = std::floor((x[a] - rho - low_[a]) / width_[a]);
            const double hi_f = std::floor((x[a] + rho - low_[a]) / width_[a]);
            if (hi_f < 0.0 || lo_f > static_cast<double>(m - 1)) return;
            const long lo = std::max(0L, static_cast<long>(lo_f));
            const long hi = std::min(m - 1, static_cast<long>(hi_f));
            start[a] = lo;
            count[a] = hi - lo + 1;
        }
    }
    const double rho2 = closed_radius2(rho);
    const auto d = static_cast<std::size_t>(dim_);
    std::array<long, kMaxDim> offset{};
    for (;;) {
        std::size_t cell = 0;
        for (int a = 0; a < dim_; ++a) {
            long c = start[a] + offset[a];
            if (wrap) c = ((c % cells_[a]) + cells_[a]) % cells_[a];
            cell += static_cast<std::size_t>(c) * stride_[a];
        }
        for (std::uint32_t k = cell_begin_[cell]; k < cell_begin_[cell + 1]; ++k) {
            const ConstPoint p{coords_.data() + k * d, d};
            const double dist2 = metric_.distance2(p, x);
            if (dist2 <= rho2) f(ids_[k], dist2);
        }
        int a = 0;
        while (a < dim_ && ++offset[a] == count[a]) offset[a++] = 0;
        if (a == dim_) break;
    }
}

}  // namespace abperc
