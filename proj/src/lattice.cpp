#include "abperc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "abperc/geometry.hpp"
#include "abperc/rng.hpp"
#include "abperc/union_find.hpp"

namespace abperc {

namespace {

void validate(const LatticeSpec& spec) {
    if (spec.kind == LatticeKind::triangular && spec.dim != 2) throw std::invalid_argument("triangular lattice is planar");
    require_dimension(spec.dim);
    if (spec.size == 0) throw std::invalid_argument("lattice: size must be positive");
    if (!(spec.scale > 0.0)) throw std::invalid_argument("lattice: scale must be positive");
}

std::uint32_t site_at(const LatticeSpec& spec, const std::vector<long>& c) {
    std::size_t s = 0;
    for (int a = spec.dim - 1; a >= 0; --a) s = s * spec.size + static_cast<std::size_t>(c[a]);
    return static_cast<std::uint32_t>(s);
}

// Union-find over the sites plus two nodes for the low and high column.
struct CrossingTracker {
    const LatticeSpec& spec;
    std::vector<std::uint8_t> open;
    UnionFind uf;
    std::uint32_t low, high;

    explicit CrossingTracker(const LatticeSpec& s)
        : spec(s), open(s.site_count(), 0), uf(s.site_count() + 2),
          low(static_cast<std::uint32_t>(s.site_count())), high(low + 1) {}

    void add(std::uint32_t site) {
        open[site] = 1;
        const std::size_t col = site % spec.size;
        if (col == 0) uf.unite(site, low);
        if (col + 1 == spec.size) uf.unite(site, high);
        for (auto nb : spec.neighbours(site))
            if (open[nb]) uf.unite(site, nb);
    }
    bool crossed() { return uf.same(low, high); }
};

}  // namespace

std::size_t LatticeSpec::site_count() const {
    std::size_t n = 1;
    for (int a = 0; a < dim; ++a) n *= size;
    return n;
}

std::vector<std::size_t> LatticeSpec::coordinates(std::uint32_t site) const {
    std::vector<std::size_t> c(static_cast<std::size_t>(dim));
    std::size_t s = site;
    for (int a = 0; a < dim; ++a) {
        c[a] = s % size;
        s /= size;
    }
    return c;
}

std::vector<std::uint32_t> LatticeSpec::neighbours(std::uint32_t site) const {
    const auto c = coordinates(site);
    std::vector<std::uint32_t> out;
    std::vector<long> nb(static_cast<std::size_t>(dim));
    const auto inside = [this](long v) { return v >= 0 && v < static_cast<long>(size); };
    if (kind == LatticeKind::triangular) {
        static constexpr int offsets[6][2] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
        for (const auto& o : offsets) {
            nb[0] = static_cast<long>(c[0]) + o[0];
            nb[1] = static_cast<long>(c[1]) + o[1];
            if (inside(nb[0]) && inside(nb[1])) out.push_back(site_at(*this, nb));
        }
        return out;
    }
    std::vector<int> offset(static_cast<std::size_t>(dim), -1);
    for (;;) {
        bool zero = true, ok = true;
        for (int a = 0; a < dim; ++a) {
            nb[a] = static_cast<long>(c[a]) + offset[a];
            zero = zero && offset[a] == 0;
            ok = ok && inside(nb[a]);
        }
        if (ok && !zero) out.push_back(site_at(*this, nb));
        int a = 0;
        while (a < dim && ++offset[a] == 2) offset[a++] = -1;
        if (a == dim) break;
    }
    return out;
}

LatticeSpec lattice_for_window(const Window& window, LatticeKind kind, double r0) {
    if (!(r0 > 0.0)) throw std::invalid_argument("lattice_for_window: r0 must be positive");
    LatticeSpec spec;
    spec.kind = kind;
    spec.dim = window.dim();
    double side = std::numeric_limits<double>::infinity();
    for (int a = 0; a < spec.dim; ++a) side = std::min(side, window.extent(a));
    if (kind == LatticeKind::triangular) {
        if (spec.dim != 2) throw std::invalid_argument("triangular lattice is planar");
        spec.scale = r0 / 2.0;
        const double usable = side - 2.0 * spec.scale;
        if (usable < 0.0) throw std::invalid_argument("lattice_for_window: window too small");
        spec.size = static_cast<std::size_t>(std::floor(usable / (1.5 * spec.scale))) + 1;
        spec.origin = {window.lows()[0] + spec.scale, window.lows()[1] + spec.scale};
    } else {
        spec.scale = r0 / (2.0 * std::sqrt(static_cast<double>(spec.dim)));
        spec.size = static_cast<std::size_t>(std::floor(side / spec.scale));
        if (spec.size == 0) throw std::invalid_argument("lattice_for_window: window too small");
        spec.origin = window.lows();
    }
    return spec;
}

bool lattice_crossing(const LatticeSpec& spec, const std::vector<std::uint8_t>& open) {
    validate(spec);
    if (open.size() != spec.site_count()) throw std::invalid_argument("lattice_crossing: open mask size mismatch");
    CrossingTracker t(spec);
    for (std::uint32_t s = 0; s < open.size(); ++s)
        if (open[s]) t.add(s);
    return t.crossed();
}

std::vector<double> site_uniforms(const LatticeSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> u(spec.site_count());
    for (auto& x : u) x = rng.uniform();
    return u;
}

bool site_percolation_crossing(const LatticeSpec& spec, double p, std::uint64_t seed) {
    validate(spec);
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("site_percolation_crossing: p must lie in [0, 1]");
    const auto u = site_uniforms(spec, seed);
    std::vector<std::uint8_t> open(u.size());
    for (std::size_t s = 0; s < u.size(); ++s) open[s] = u[s] < p;
    return lattice_crossing(spec, open);
}

double crossing_threshold(const LatticeSpec& spec, std::uint64_t seed) {
    validate(spec);
    const auto u = site_uniforms(spec, seed);
    std::vector<std::uint32_t> order(u.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&u](std::uint32_t a, std::uint32_t b) { return u[a] < u[b]; });
    CrossingTracker t(spec);
    for (auto s : order) {
        t.add(s);
        if (t.crossed()) return u[s];
    }
    return 1.0;
}

std::vector<std::uint8_t> occupancy_sites(const std::vector<PointSet>& processes, const LatticeSpec& spec) {
    validate(spec);
    if (spec.origin.size() != static_cast<std::size_t>(spec.dim)) throw std::invalid_argument("occupancy_sites: origin dimension");
    const std::size_t n = spec.site_count();
    std::vector<std::uint8_t> open(n, processes.empty() ? 0 : 1);
    std::vector<std::uint8_t> hit(n);
    std::vector<long> cell(static_cast<std::size_t>(spec.dim));
    const TriangularBasis basis{spec.scale};
    const auto e1 = basis.e1();
    const auto e2 = basis.e2();
    const double flower_r = 2.0 * spec.scale;
    for (const auto& ps : processes) {
        if (ps.dim() != spec.dim) throw std::invalid_argument("occupancy_sites: dimension mismatch");
        std::fill(hit.begin(), hit.end(), 0);
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const auto x = ps.point(k);
            if (spec.kind == LatticeKind::z_star_d) {
                bool inside = true;
                for (int a = 0; a < spec.dim && inside; ++a) {
                    const double f = std::floor((x[a] - spec.origin[a]) / spec.scale);
                    inside = f >= 0.0 && f < static_cast<double>(spec.size);
                    cell[a] = static_cast<long>(f);
                }
                if (inside) hit[site_at(spec, cell)] = 1;
                continue;
            }
            // Axial coordinates; the nearest vertex is a corner of the enclosing rhombus.
            const double dx = x[0] - spec.origin[0], dy = x[1] - spec.origin[1];
            const double b = dy / e2[1];
            const double a = (dx - b * e2[0]) / e1[0];
            const double fa = std::floor(a), fb = std::floor(b);
            double best = std::numeric_limits<double>::infinity();
            std::array<double, 2> vertex{};
            bool found = false;
            for (int ia = 0; ia < 2; ++ia) {
                for (int ib = 0; ib < 2; ++ib) {
                    const double ca = fa + ia, cb = fb + ib;
                    const std::array<double, 2> v{spec.origin[0] + ca * e1[0] + cb * e2[0], spec.origin[1] + cb * e2[1]};
                    const double d2 = (x[0] - v[0]) * (x[0] - v[0]) + (x[1] - v[1]) * (x[1] - v[1]);
                    if (d2 < best) {
                        best = d2;
                        vertex = v;
                        cell[0] = static_cast<long>(ca);
                        cell[1] = static_cast<long>(cb);
                        found = true;
                    }
                }
            }
            const auto limit = static_cast<long>(spec.size);
            if (!found || cell[0] < 0 || cell[1] < 0 || cell[0] >= limit || cell[1] >= limit) continue;
            if (flower_contains(x, vertex, flower_r)) hit[site_at(spec, cell)] = 1;
        }
        for (std::size_t s = 0; s < n; ++s) open[s] &= hit[s];
    }
    return open;
}

}  // namespace abperc
