#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "abperc/observables.hpp"
#include "abperc/rng.hpp"

namespace abperc {

namespace {

struct Disc {
    double x, y;
};

// True when the arcs [centre - half, centre + half] cover the whole circle.
bool arcs_cover_circle(std::vector<std::pair<double, double>> arcs) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<std::pair<double, double>> spans;
    for (auto [mid, half] : arcs) {
        if (half >= std::numbers::pi) return true;
        double a = std::fmod(mid - half, two_pi);
        if (a < 0.0) a += two_pi;
        const double b = a + 2.0 * half;
        if (b > two_pi) {
            spans.emplace_back(a, two_pi);
            spans.emplace_back(0.0, b - two_pi);
        } else {
            spans.emplace_back(a, b);
        }
    }
    std::sort(spans.begin(), spans.end());
    double reach = 0.0;
    for (auto [a, b] : spans) {
        if (a > reach) return false;
        reach = std::max(reach, b);
    }
    return reach >= two_pi;
}

}  // namespace

bool vacancy_positive(const PointSet& pts, double r, std::array<double, 2> centre) {
    if (pts.dim() != 2) throw std::invalid_argument("vacancy_positive: planar points only");
    if (!(r > 0.0)) throw std::invalid_argument("vacancy_positive: r must be positive");
    std::vector<Disc> discs;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Disc c{pts.point(i)[0] - centre[0], pts.point(i)[1] - centre[1]};
        const double dist = std::hypot(c.x, c.y);
        if (dist == 0.0) return false;
        if (dist < 2.0 * r) discs.push_back(c);
    }
    if (discs.empty()) return true;

    std::vector<std::pair<double, double>> arcs;
    for (const auto& c : discs) arcs.emplace_back(std::atan2(c.y, c.x), std::acos(std::hypot(c.x, c.y) / (2.0 * r)));
    if (!arcs_cover_circle(std::move(arcs))) return true;

    // The boundary circle is covered; any hole has a corner where two circles cross.
    const double r2 = r * r;
    for (std::size_t i = 0; i < discs.size(); ++i) {
        for (std::size_t j = i + 1; j < discs.size(); ++j) {
            const double dx = discs[j].x - discs[i].x;
            const double dy = discs[j].y - discs[i].y;
            const double dd = dx * dx + dy * dy;
            if (dd == 0.0 || dd >= 4.0 * r2) continue;
            const double h = std::sqrt(r2 - dd / 4.0);
            const double len = std::sqrt(dd);
            const double mx = discs[i].x + dx / 2.0, my = discs[i].y + dy / 2.0;
            for (double sign : {-1.0, 1.0}) {
                const double px = mx + sign * h * (-dy / len);
                const double py = my + sign * h * (dx / len);
                if (px * px + py * py >= r2) continue;
                bool covered = false;
                for (std::size_t k = 0; k < discs.size() && !covered; ++k) {
                    if (k == i || k == j) continue;
                    const double ex = px - discs[k].x, ey = py - discs[k].y;
                    covered = ex * ex + ey * ey < r2;
                }
                if (!covered) return true;
            }
        }
    }
    return false;
}

double vacancy_bound(double n, double r) {
    if (!(r > 0.0 && r < 0.5)) throw std::domain_error("vacancy_bound: requires 0 < r < 1/2");
    if (n < 0.0) throw std::domain_error("vacancy_bound: negative intensity");
    const double m = n * std::numbers::pi * r * r;
    return (1.0 + m + 4.0 * m * m) * std::exp(-m);
}

ProportionEstimate estimate_vacancy(double n, double r, std::size_t reps, std::uint64_t master_seed,
                                    Execution exec) {
    if (!(r > 0.0)) throw std::invalid_argument("estimate_vacancy: r must be positive");
    if (n < 0.0) throw std::invalid_argument("estimate_vacancy: negative intensity");
    const Window box = Window::box(2, -2.0 * r, 2.0 * r);
    const auto count = static_cast<long>(reps);
    std::size_t hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits) if (exec == Execution::parallel)
    for (long i = 0; i < count; ++i) {
        const auto pts = sample_poisson(box, n, derive_seed(master_seed, static_cast<std::uint64_t>(i)));
        hits += vacancy_positive(pts, r) ? 1 : 0;
    }
    return wilson_interval(hits, reps);
}

}  // namespace abperc
