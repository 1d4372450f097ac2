#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "abperc/observables.hpp"
#include "abperc/rng.hpp"
#include "abperc/spatial_index.hpp"
#include "abperc/union_find.hpp"

namespace abperc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_box(double r, double L, int d) {
    require_dimension(d);
    if (!(r > 0.0)) throw std::invalid_argument("crossing: r must be positive");
    // A single vertex touching both faces would count as a crossing.
    if (!(L > 4.0 * r)) throw std::invalid_argument("crossing: box side must exceed twice the witness radius");
}

std::vector<double> uniform_marks(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> marks(count);
    for (auto& m : marks) m = rng.uniform();
    return marks;
}

std::vector<double> per_rep_thresholds(double lambda, double mu_max, double r, double L, std::size_t reps,
                                       std::uint64_t master_seed, int d, Execution exec) {
    std::vector<double> threshold(reps, kInf);
    const auto n = static_cast<long>(reps);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
    for (long i = 0; i < n; ++i) {
        const auto sample = sample_coupled(lambda, mu_max, r, L, d, derive_seed(master_seed, static_cast<std::uint64_t>(i)));
        threshold[i] = crossing_threshold_mu(sample, lambda, r);
    }
    return threshold;
}

std::size_t count_at_most(const std::vector<double>& values, double x) {
    return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [x](double v) { return v <= x; }));
}

}  // namespace

CrossingReport crossing_exists(const ABGraph& g, const PointSet& vertices, const Window& window, int axis) {
    if (axis < 0 || axis >= window.dim()) throw std::invalid_argument("crossing_exists: bad axis");
    if (vertices.size() != g.vertex_count()) throw std::invalid_argument("crossing_exists: vertex count mismatch");
    CrossingReport rep;
    rep.axis = axis;
    const double reach = g.witness_radius();
    const double lo = window.lows()[axis];
    const double hi = window.highs()[axis];
    const auto& label = g.component_labels();
    std::vector<std::uint8_t> touches(g.component_count(), 0);
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        const double x = vertices.point(v)[axis];
        if (x - lo <= reach) touches[label[v]] |= 1;
        if (hi - x <= reach) touches[label[v]] |= 2;
    }
    for (std::uint32_t c = 0; c < touches.size(); ++c) {
        if (touches[c] == 3) {
            rep.crossed = true;
            rep.component = c;
            break;
        }
    }
    return rep;
}

CoupledPercolationSample sample_coupled(double lambda_max, double mu_max, double r, double L, int d,
                                        std::uint64_t seed) {
    require_dimension(d);
    if (!(r > 0.0) || !(L > 0.0)) throw std::invalid_argument("sample_coupled: r and L must be positive");
    const Window box = Window::box(d, 0.0, L);
    CoupledPercolationSample s{sample_poisson(box, lambda_max, derive_seed(seed, 0), "vertices"), {},
                               sample_poisson(box.dilated(2.0 * r), mu_max, derive_seed(seed, 1), "witnesses"),
                               {}, lambda_max, mu_max};
    s.vertex_marks = uniform_marks(s.vertices.size(), derive_seed(seed, 2));
    s.witness_marks = uniform_marks(s.witnesses.size(), derive_seed(seed, 3));
    return s;
}

double crossing_threshold_mu(const CoupledPercolationSample& sample, double lambda, double r, int axis) {
    if (lambda < 0.0 || lambda > sample.lambda_max) throw std::invalid_argument("crossing_threshold_mu: lambda out of range");
    const Window& box = sample.vertices.window;
    if (axis < 0 || axis >= box.dim()) throw std::invalid_argument("crossing_threshold_mu: bad axis");
    const double reach = 2.0 * r;

    PointSet active(box, lambda);
    for (std::size_t v = 0; v < sample.vertices.size(); ++v)
        if (sample.vertex_marks[v] * sample.lambda_max <= lambda) active.push_back(sample.vertices.point(v));
    const auto n = static_cast<std::uint32_t>(active.size());
    if (n == 0) return kInf;

    // Two extra nodes stand for the low and high faces.
    UnionFind uf(n + 2);
    const std::uint32_t low = n, high = n + 1;
    const double lo = box.lows()[axis], hi = box.highs()[axis];
    for (std::uint32_t v = 0; v < n; ++v) {
        const double x = active.point(v)[axis];
        if (x - lo <= reach) uf.unite(v, low);
        if (hi - x <= reach) uf.unite(v, high);
    }
    if (uf.same(low, high)) return 0.0;

    std::vector<std::uint32_t> order(sample.witnesses.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return sample.witness_marks[a] < sample.witness_marks[b];
    });
    const SpatialIndex index(active, reach, Metric::euclidean());
    std::vector<std::uint32_t> members;
    for (auto w : order) {
        members.clear();
        index.for_each_within(sample.witnesses.point(w), reach, [&](std::uint32_t id, double) { members.push_back(id); });
        if (members.size() < 2) continue;
        for (std::size_t k = 1; k < members.size(); ++k) uf.unite(members[0], members[k]);
        if (uf.same(low, high)) return sample.witness_marks[w] * sample.mu_max;
    }
    return kInf;
}

ProportionEstimate estimate_theta(double lambda, double mu, double r, double L, std::size_t reps,
                                  std::uint64_t master_seed, int d, Execution exec) {
    require_box(r, L, d);
    if (lambda < 0.0 || mu < 0.0) throw std::invalid_argument("estimate_theta: negative intensity");
    if (lambda == 0.0 || mu == 0.0) return wilson_interval(0, reps);
    const auto t = per_rep_thresholds(lambda, mu, r, L, reps, master_seed, d, exec);
    return wilson_interval(count_at_most(t, mu), reps);
}

std::vector<ProportionEstimate> sweep_theta(double lambda, const std::vector<double>& mus, double r, double L,
                                            std::size_t reps, std::uint64_t master_seed, int d, Execution exec) {
    require_box(r, L, d);
    if (mus.empty()) return {};
    if (lambda < 0.0) throw std::invalid_argument("sweep_theta: negative lambda");
    const double mu_max = *std::max_element(mus.begin(), mus.end());
    if (*std::min_element(mus.begin(), mus.end()) < 0.0) throw std::invalid_argument("sweep_theta: negative mu");
    std::vector<ProportionEstimate> out;
    out.reserve(mus.size());
    if (lambda == 0.0 || mu_max == 0.0) {
        for (std::size_t i = 0; i < mus.size(); ++i) out.push_back(wilson_interval(0, reps));
        return out;
    }
    const auto t = per_rep_thresholds(lambda, mu_max, r, L, reps, master_seed, d, exec);
    for (double mu : mus) out.push_back(wilson_interval(mu == 0.0 ? 0 : count_at_most(t, mu), reps));
    return out;
}

MuCriticalEstimate estimate_mu_c(double lambda, double r, double L, double target, double tol, std::size_t reps,
                                 std::uint64_t master_seed, double mu_max, int d, Execution exec) {
    require_box(r, L, d);
    if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("estimate_mu_c: target must lie in (0, 1)");
    if (!(tol > 0.0)) throw std::invalid_argument("estimate_mu_c: tol must be positive");
    if (!(mu_max > 0.0)) throw std::invalid_argument("estimate_mu_c: mu_max must be positive");
    if (reps == 0) throw std::invalid_argument("estimate_mu_c: reps must be positive");
    MuCriticalEstimate est;
    est.mu_hat = est.mu_lo = est.mu_hi = kInf;
    if (!(lambda > 0.0)) {
        est.per_rep_threshold.assign(reps, kInf);
        est.at_mu_hat = wilson_interval(0, reps);
        return est;
    }
    est.per_rep_threshold = per_rep_thresholds(lambda, mu_max, r, L, reps, master_seed, d, exec);
    const auto& t = est.per_rep_threshold;
    const double n = static_cast<double>(reps);
    const auto needed = static_cast<std::size_t>(std::ceil(target * n));
    if (count_at_most(t, mu_max) < needed) {
        est.at_mu_hat = wilson_interval(count_at_most(t, mu_max), reps);
        return est;
    }
    est.detected = true;
    double lo = 0.0, hi = mu_max;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (count_at_most(t, mid) >= needed)
            hi = mid;
        else
            lo = mid;
    }
    est.mu_hat = 0.5 * (lo + hi);
    est.at_mu_hat = wilson_interval(count_at_most(t, est.mu_hat), reps);

    std::vector<double> sorted = t;
    std::sort(sorted.begin(), sorted.end());
    const double half = 1.96 * std::sqrt(n * target * (1.0 - target));
    const long k_lo = static_cast<long>(std::floor(n * target - half));
    const long k_hi = static_cast<long>(std::ceil(n * target + half));
    est.mu_lo = k_lo < 1 ? 0.0 : sorted[static_cast<std::size_t>(k_lo - 1)];
    est.mu_hi = k_hi > static_cast<long>(reps) ? kInf : sorted[static_cast<std::size_t>(k_hi - 1)];
    return est;
}

}  // namespace abperc
