#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>

namespace abperc {

using ConstPoint = std::span<const double>;

/// Highest supported ambient dimension.
inline constexpr int kMaxDim = 8;

void require_dimension(int d, int min_d = 2);

/// Relative tolerance of closed-ball membership tests.
inline constexpr double kDistanceSlack = 1e-12;

/// Squared radius used to decide d(x, y) <= rho from squared distances.
inline double closed_radius2(double rho) { return rho * rho * (1.0 + 2.0 * kDistanceSlack); }

/// Euclidean metric, or the flat-torus metric on [0, side]^d.
class Metric {
public:
    enum class Kind { euclidean, toroidal };

    static Metric euclidean() { return Metric(Kind::euclidean, 0.0); }
    static Metric toroidal(double side = 1.0);

    Kind kind() const { return kind_; }
    bool wraps() const { return kind_ == Kind::toroidal; }
    double side() const { return side_; }

    double distance2(ConstPoint a, ConstPoint b) const {
        double acc = 0.0;
        if (kind_ == Kind::euclidean) {
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double diff = a[i] - b[i];
                acc += diff * diff;
            }
        } else {
            for (std::size_t i = 0; i < a.size(); ++i) {
                double diff = std::abs(a[i] - b[i]);
                if (diff > 0.5 * side_) diff = side_ - diff;
                acc += diff * diff;
            }
        }
        return acc;
    }

    double distance(ConstPoint a, ConstPoint b) const { return std::sqrt(distance2(a, b)); }

    bool operator==(const Metric&) const = default;

private:
    Metric(Kind kind, double side) : kind_(kind), side_(side) {}
    Kind kind_;
    double side_;
};

/// Toroidal distance on [0, side]^d; throws std::domain_error when a
/// coordinate lies outside the cube.
double torus_distance(ConstPoint x, ConstPoint y, double side = 1.0);

/// Volume of the unit ball in dimension d >= 1.
double ball_volume(int d);

/// Normalised lens volume |B_0(u^{1/d}) ∩ B_{s^{1/d} e1}(u^{1/d})| / (θ_d u).
/// Exact circular-lens formula for d = 2, spherical-cap quadrature for d >= 3.
double eta(double u, double s, int d);

/// Lower bound (1 - (s/u)^{1/d}/2)^d from the inscribed ball of the lens.
double eta_lower_bound(double u, double s, int d);

/// r_n(c, β) = (log(n/β) / (c n θ_d))^{1/d}. n == β gives 0; n < β throws.
double cutoff_radius(double n, double c, double beta, int d);

/// α(c) = inf{a : a η(a, c) > 1}, by bisection to width tol.
double alpha_of_c(double c, int d, double tol = 1e-6);

double alpha_upper_bound(double c, int d);

/// c_0: root of η(c) + 1/c = 1 on (1, 4) for d = 2, and 1 for d >= 3.
double c_zero(int d, double tol = 1e-6);

/// Triangular lattice with edge length `edge`, one basis vector along x.
struct TriangularBasis {
    double edge;
    std::array<double, 2> e1() const { return {edge, 0.0}; }
    std::array<double, 2> e2() const { return {0.5 * edge, 0.5 * std::numbers::sqrt3 * edge}; }
    /// The six nearest-neighbour offsets, counter-clockwise from +x.
    std::array<std::array<double, 2>, 6> neighbours() const;
};

/// Membership of x in the flower of a triangular-lattice vertex (edge r/2):
/// the Voronoi cell of the vertex intersected with the six closed discs of
/// radius r/2 centred at the midpoints of the incident edges.
bool flower_contains(ConstPoint x, ConstPoint vertex, double r);

/// a(d, r): flower area for d = 2 (polar quadrature), (r / (2√d))^d for d >= 3.
double cell_area(int d, double r);

/// Published rounded flower area a(2, 2).
inline constexpr double kPublishedFlowerArea22 = 0.8227;

}  // namespace abperc
