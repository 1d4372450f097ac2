#include "abperc/spatial_index.hpp"

#include <numeric>
#include <stdexcept>

namespace abperc {

SpatialIndex::SpatialIndex(const PointSet& ps, double cell_size)
    : SpatialIndex(ps, cell_size, ps.window.metric()) {}

SpatialIndex::SpatialIndex(const PointSet& ps, double cell_size, Metric metric)
    : dim_(ps.dim()), metric_(metric) {
    if (metric_.wraps()) {
        for (int a = 0; a < dim_; ++a)
            if (ps.window.extent(a) != metric_.side())
                throw std::invalid_argument("SpatialIndex: toroidal metric requires window extent == side");
    }
    if (!(cell_size > 0.0)) throw std::invalid_argument("SpatialIndex: cell size must be positive");
    const std::size_t n = ps.size();
    const double max_cells = std::max<double>(64.0, 4.0 * static_cast<double>(n));

    double h = cell_size;
    double total = 0.0;
    for (;;) {
        total = 1.0;
        for (int a = 0; a < dim_; ++a) total *= std::max(1.0, std::floor(ps.window.extent(a) / h));
        if (total <= max_cells) break;
        h *= 1.5;
    }
    double diam2 = 0.0;
    std::size_t stride = 1;
    for (int a = 0; a < dim_; ++a) {
        const double ext = ps.window.extent(a);
        cells_[a] = static_cast<int>(std::max(1.0, std::floor(ext / h)));
        width_[a] = ext / cells_[a];
        low_[a] = ps.window.lows()[a];
        stride_[a] = stride;
        stride *= static_cast<std::size_t>(cells_[a]);
        const double span = metric_.wraps() ? 0.5 * ext : ext;
        diam2 += span * span;
    }
    diameter_ = std::sqrt(diam2);

    std::vector<std::size_t> cell_of(n);
    std::vector<std::uint32_t> counts(stride + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = ps.point(i);
        std::size_t cell = 0;
        for (int a = 0; a < dim_; ++a) {
            long c = static_cast<long>(std::floor((p[a] - low_[a]) / width_[a]));
            c = std::clamp(c, 0L, static_cast<long>(cells_[a]) - 1);
            cell += static_cast<std::size_t>(c) * stride_[a];
        }
        cell_of[i] = cell;
        ++counts[cell + 1];
    }
    std::partial_sum(counts.begin(), counts.end(), counts.begin());
    cell_begin_ = counts;
    ids_.resize(n);
    coords_.resize(n * static_cast<std::size_t>(dim_));
    auto cursor = counts;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t slot = cursor[cell_of[i]]++;
        ids_[slot] = static_cast<std::uint32_t>(i);
        const auto p = ps.point(i);
        std::copy(p.begin(), p.end(), coords_.begin() + static_cast<std::ptrdiff_t>(slot) * dim_);
    }
}

std::vector<std::uint32_t> SpatialIndex::range_query(ConstPoint x, double rho) const {
    std::vector<std::uint32_t> out;
    for_each_within(x, rho, [&out](std::uint32_t id, double) { out.push_back(id); });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace abperc
