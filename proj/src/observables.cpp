#include "abperc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "abperc/geometry.hpp"
#include "abperc/spatial_index.hpp"

namespace abperc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_shared_window(const PointSet& p1, const PointSet& p2) {
    if (!(p1.window == p2.window)) throw std::domain_error("point sets must share the window");
}

// Mean inter-point spacing, used to size grids for nearest-neighbour searches.
double spacing(const PointSet& ps) {
    const double n = std::max<double>(1.0, static_cast<double>(ps.size()));
    return std::pow(ps.window.volume() / n, 1.0 / ps.dim());
}

// Witness-centric pass: each witness marks the vertices it reaches.
IsolationReport counts_by_witness(const PointSet& p1, const PointSet& p2, double r) {
    IsolationReport rep;
    rep.r = r;
    rep.hat_radius = 2.0 * r;
    const std::size_t n1 = p1.size();
    std::vector<std::uint8_t> covered(n1, 0);
    std::vector<std::uint8_t> linked(n1, 0);
    const SpatialIndex index(p1, r);
    std::vector<std::uint32_t> members;
    for (std::size_t w = 0; w < p2.size(); ++w) {
        members.clear();
        index.for_each_within(p2.point(w), r, [&members](std::uint32_t id, double) { members.push_back(id); });
        if (members.empty()) ++rep.W0;
        if (members.size() == 1) ++rep.W_bar;
        for (auto v : members) {
            covered[v] = 1;
            if (members.size() >= 2) linked[v] = 1;
        }
    }
    for (std::size_t v = 0; v < n1; ++v) {
        rep.W += linked[v] ? 0 : 1;
        rep.W_tilde += covered[v] ? 0 : 1;
    }
    const SpatialIndex wide(p1, rep.hat_radius);
    for (std::size_t v = 0; v < n1; ++v)
        if (wide.count_within(p1.point(v), rep.hat_radius) == 1) ++rep.W_hat;
    return rep;
}

// Vertex-centric kernel: witness occupancies first, then each vertex looks
// at the witnesses around it. Every loop writes only its own slot.
IsolationReport counts_by_vertex(const PointSet& p1, const PointSet& p2, double r) {
    IsolationReport rep;
    rep.r = r;
    rep.hat_radius = 2.0 * r;
    const auto n1 = static_cast<long>(p1.size());
    const auto n2 = static_cast<long>(p2.size());
    const SpatialIndex index1(p1, r);
    const SpatialIndex index2(p2, r);
    std::vector<std::uint32_t> occupancy(static_cast<std::size_t>(n2));
    std::size_t w_bar = 0, w0 = 0;
#pragma omp parallel for schedule(static) reduction(+ : w_bar, w0)
    for (long w = 0; w < n2; ++w) {
        const auto k = static_cast<std::uint32_t>(index1.count_within(p2.point(w), r));
        occupancy[w] = k;
        w_bar += (k == 1);
        w0 += (k == 0);
    }
    const double hat = rep.hat_radius;
    std::size_t w = 0, w_tilde = 0, w_hat = 0;
#pragma omp parallel for schedule(static) reduction(+ : w, w_tilde, w_hat)
    for (long v = 0; v < n1; ++v) {
        bool covered = false;
        bool linked = false;
        index2.for_each_within(p1.point(v), r, [&](std::uint32_t id, double) {
            covered = true;
            linked = linked || occupancy[id] >= 2;
        });
        w += !linked;
        w_tilde += !covered;
        w_hat += (index1.count_within(p1.point(v), hat) == 1);
    }
    rep.W = w;
    rep.W_tilde = w_tilde;
    rep.W_hat = w_hat;
    rep.W_bar = w_bar;
    rep.W0 = w0;
    return rep;
}

}  // namespace

std::size_t count_isolated(const ABGraph& g) {
    std::size_t count = 0;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) count += g.is_isolated(v) ? 1 : 0;
    return count;
}

IsolationReport auxiliary_counts(const PointSet& p1, const PointSet& p2, double r, Execution exec) {
    require_shared_window(p1, p2);
    if (!(r > 0.0)) throw std::invalid_argument("auxiliary_counts: r must be positive");
    return exec == Execution::parallel ? counts_by_vertex(p1, p2, r) : counts_by_witness(p1, p2, r);
}

std::vector<double> isolation_radii(const PointSet& p1, const PointSet& p2, Execution exec) {
    require_shared_window(p1, p2);
    const auto n1 = static_cast<long>(p1.size());
    const auto n2 = static_cast<long>(p2.size());
    std::vector<double> radius(static_cast<std::size_t>(n1), kInf);
    if (n1 < 2 || n2 == 0) return radius;
    const bool parallel = exec == Execution::parallel;

    // For each witness: nearest vertex and squared distance to the second nearest.
    const SpatialIndex index1(p1, spacing(p1));
    std::vector<std::uint32_t> nearest(static_cast<std::size_t>(n2));
    std::vector<double> second2(static_cast<std::size_t>(n2));
#pragma omp parallel for schedule(dynamic, 256) if (parallel)
    for (long w = 0; w < n2; ++w) {
        const auto y = p2.point(w);
        double reach = spacing(p1);
        for (;;) {
            double b1 = kInf, b2 = kInf;
            std::uint32_t id1 = 0;
            index1.for_each_within(y, reach, [&](std::uint32_t id, double d2) {
                if (d2 < b1 || (d2 == b1 && id < id1)) {
                    b2 = b1;
                    b1 = d2;
                    id1 = id;
                } else if (d2 < b2) {
                    b2 = d2;
                }
            });
            if (b2 <= reach * reach || reach >= index1.diameter()) {
                nearest[w] = id1;
                second2[w] = b2;
                break;
            }
            reach *= 2.0;
        }
    }

    // Witnesses grouped by their nearest vertex.
    std::vector<std::uint32_t> begin(static_cast<std::size_t>(n1) + 1, 0);
    for (auto v : nearest) ++begin[v + 1];
    for (long v = 0; v < n1; ++v) begin[v + 1] += begin[v];
    std::vector<std::uint32_t> grouped(static_cast<std::size_t>(n2));
    {
        auto cursor = begin;
        for (long w = 0; w < n2; ++w) grouped[cursor[nearest[w]]++] = static_cast<std::uint32_t>(w);
    }

    // A vertex X first shares a witness Y at radius d2(Y) if X is Y's nearest
    // vertex, and at d(X, Y) otherwise.
    const SpatialIndex index2(p2, spacing(p2));
#pragma omp parallel for schedule(dynamic, 256) if (parallel)
    for (long v = 0; v < n1; ++v) {
        double own = kInf;
        for (auto k = begin[v]; k < begin[v + 1]; ++k) own = std::min(own, second2[grouped[k]]);
        const auto x = p1.point(v);
        double reach = spacing(p2);
        for (;;) {
            double other = kInf;
            index2.for_each_within(x, reach, [&](std::uint32_t id, double d2) {
                if (nearest[id] != static_cast<std::uint32_t>(v)) other = std::min(other, d2);
            });
            const double best = std::min(own, other);
            if (best <= reach * reach || reach >= index2.diameter()) {
                radius[v] = std::sqrt(best);
                break;
            }
            reach *= 2.0;
        }
    }
    return radius;
}

double largest_nn_radius(const PointSet& p1, const PointSet& p2, Execution exec) {
    if (p1.empty() || p2.empty()) throw std::domain_error("largest_nn_radius: needs both point sets non-empty");
    const auto radii = isolation_radii(p1, p2, exec);
    return *std::max_element(radii.begin(), radii.end());
}

ConnectivityResult connectivity_threshold(const PointSet& p1, const PointSet& p2, double c, double tol) {
    require_shared_window(p1, p2);
    if (!(tol > 0.0)) throw std::invalid_argument("connectivity_threshold: tol must be positive");
    ConnectivityResult res;
    if (p1.size() <= 1) {
        res.degenerate = true;
        return res;
    }
    const int d = p1.dim();
    const double n = p1.intensity * p1.window.volume();
    res.cutoff = cutoff_radius(n, c, 1.0, d);
    if (p2.empty() || !(res.cutoff > 0.0)) {
        res.never_connected = true;
        res.alpha_star = res.lo = res.hi = kInf;
        return res;
    }
    const Metric metric = p1.window.metric();
    const auto connected = [&](double a) {
        ++res.probes;
        return build_ab_rgg(p1, p2, std::pow(a, 1.0 / d) * res.cutoff, metric).is_connected();
    };
    // Once the radius spans the whole window every witness sees every vertex.
    double diameter = 0.0;
    for (int a = 0; a < d; ++a) {
        const double span = metric.wraps() ? 0.5 * p1.window.extent(a) : p1.window.extent(a);
        diameter += span * span;
    }
    const double a_cap = std::pow(std::sqrt(diameter) / res.cutoff, d) * 2.0;
    double lo = 0.0;
    double hi = 1.0;
    while (!connected(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > a_cap) {
            res.never_connected = true;
            res.alpha_star = res.lo = res.hi = kInf;
            return res;
        }
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (connected(mid))
            hi = mid;
        else
            lo = mid;
    }
    res.lo = lo;
    res.hi = hi;
    res.alpha_star = hi;
    return res;
}

}  // namespace abperc
