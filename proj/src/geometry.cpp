#include "abperc/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "abperc/numerics.hpp"

namespace abperc {

void require_dimension(int d, int min_d) {
    if (d < min_d || d > kMaxDim)
        throw std::invalid_argument("dimension " + std::to_string(d) + " outside [" +
                                    std::to_string(min_d) + ", " + std::to_string(kMaxDim) + "]");
}

Metric Metric::toroidal(double side) {
    if (!(side > 0.0)) throw std::invalid_argument("torus side must be positive");
    return Metric(Kind::toroidal, side);
}

double torus_distance(ConstPoint x, ConstPoint y, double side) {
    if (x.size() != y.size()) throw std::invalid_argument("torus_distance: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0.0 || x[i] > side || y[i] < 0.0 || y[i] > side)
            throw std::domain_error("torus_distance: coordinate outside [0, side]");
    }
    return Metric::toroidal(side).distance(x, y);
}

double ball_volume(int d) {
    if (d < 1) throw std::invalid_argument("ball_volume: d must be >= 1");
    const double half = 0.5 * d;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

namespace {

void check_eta_args(double u, double s, int d) {
    require_dimension(d);
    if (!(u > 0.0)) throw std::domain_error("eta: u must be positive");
    if (s < 0.0) throw std::domain_error("eta: s must be non-negative");
}

// Lens fraction for unit balls whose centres are t apart (0 <= t < 2).
double lens_fraction(double t, int d) {
    if (d == 2) {
        const double phi = std::acos(0.5 * t);
        return (2.0 * phi - std::sin(2.0 * phi)) / std::numbers::pi;
    }
    const double expo = 0.5 * (d - 1);
    const auto integrand = [expo](double x) { return std::pow(std::max(0.0, 1.0 - 0.25 * x * x), expo); };
    const double integral = numerics::adaptive_simpson(integrand, 0.0, t, 1e-10);
    const double frac = 1.0 - ball_volume(d - 1) / ball_volume(d) * integral;
    return std::clamp(frac, 0.0, 1.0);
}

}  // namespace

double eta(double u, double s, int d) {
    check_eta_args(u, s, d);
    if (s == 0.0) return 1.0;
    const double t = std::pow(s / u, 1.0 / d);
    if (t >= 2.0) return 0.0;
    return lens_fraction(t, d);
}

double eta_lower_bound(double u, double s, int d) {
    check_eta_args(u, s, d);
    const double t = std::pow(s / u, 1.0 / d);
    if (t > 2.0) throw std::domain_error("eta_lower_bound: requires s <= 2^d u");
    return std::pow(1.0 - 0.5 * t, d);
}

double cutoff_radius(double n, double c, double beta, int d) {
    require_dimension(d);
    if (!(c > 0.0) || !(beta > 0.0)) throw std::domain_error("cutoff_radius: c and beta must be positive");
    if (n < beta) throw std::domain_error("cutoff_radius: requires n >= beta");
    if (n == beta) return 0.0;
    return std::pow(std::log(n / beta) / (c * n * ball_volume(d)), 1.0 / d);
}

double alpha_upper_bound(double c, int d) {
    require_dimension(d);
    if (c < 0.0) throw std::domain_error("alpha_upper_bound: c must be non-negative");
    return std::pow(1.0 + 0.5 * std::pow(c, 1.0 / d), d);
}

double alpha_of_c(double c, int d, double tol) {
    require_dimension(d);
    if (c < 0.0) throw std::domain_error("alpha_of_c: c must be non-negative");
    if (c == 0.0) return 1.0;
    // a·η(a, c) is increasing in a, at most 0 excess at a = 1 and at least 1
    // at the closed-form upper bound.
    const auto excess = [c, d](double a) { return a * eta(a, c, d) - 1.0; };
    return numerics::bisect(excess, 1.0, alpha_upper_bound(c, d), tol);
}

double c_zero(int d, double tol) {
    require_dimension(d);
    if (d >= 3) return 1.0;
    const auto g = [](double c) { return eta(1.0, c, 2) + 1.0 / c - 1.0; };
    return numerics::bisect(g, 1.0, 4.0, tol);
}

std::array<std::array<double, 2>, 6> TriangularBasis::neighbours() const {
    std::array<std::array<double, 2>, 6> out{};
    for (int k = 0; k < 6; ++k) {
        const double ang = k * std::numbers::pi / 3.0;
        out[k] = {edge * std::cos(ang), edge * std::sin(ang)};
    }
    return out;
}

bool flower_contains(ConstPoint x, ConstPoint vertex, double r) {
    if (x.size() != 2 || vertex.size() != 2) throw std::invalid_argument("flower_contains: points must be 2-D");
    if (!(r > 0.0)) throw std::invalid_argument("flower_contains: r must be positive");
    const TriangularBasis basis{0.5 * r};
    const double dx = x[0] - vertex[0];
    const double dy = x[1] - vertex[1];
    const double half_edge = 0.5 * basis.edge;
    const double radius2 = 0.25 * r * r;
    for (const auto& nb : basis.neighbours()) {
        // Voronoi half-plane: closer to the vertex than to this neighbour.
        if ((dx * nb[0] + dy * nb[1]) / basis.edge > half_edge) return false;
        const double mx = dx - 0.5 * nb[0];
        const double my = dy - 0.5 * nb[1];
        if (mx * mx + my * my > radius2) return false;
    }
    return true;
}

namespace {

// Distance from the vertex to the flower boundary along direction phi.
double flower_radius(double phi, double r) {
    const TriangularBasis basis{0.5 * r};
    const double ux = std::cos(phi);
    const double uy = std::sin(phi);
    const double disc_r2 = 0.25 * r * r;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& nb : basis.neighbours()) {
        const double mx = 0.5 * nb[0];
        const double my = 0.5 * nb[1];
        const double um = ux * mx + uy * my;
        const double m2 = mx * mx + my * my;
        best = std::min(best, um + std::sqrt(um * um - m2 + disc_r2));
        const double proj = (ux * nb[0] + uy * nb[1]) / basis.edge;
        if (proj > 0.0) best = std::min(best, 0.5 * basis.edge / proj);
    }
    return best;
}

}  // namespace

double cell_area(int d, double r) {
    require_dimension(d);
    if (!(r > 0.0)) throw std::invalid_argument("cell_area: r must be positive");
    if (d >= 3) return std::pow(r / (2.0 * std::sqrt(static_cast<double>(d))), d);
    // The boundary switches discs at multiples of pi/6, so each piece is smooth.
    const auto integrand = [r](double phi) {
        const double rho = flower_radius(phi, r);
        return 0.5 * rho * rho;
    };
    double area = 0.0;
    const double piece = std::numbers::pi / 6.0;
    for (int k = 0; k < 12; ++k) area += numerics::adaptive_simpson(integrand, k * piece, (k + 1) * piece, 1e-13);
    return area;
}

}  // namespace abperc
