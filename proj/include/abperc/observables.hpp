#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "abperc/abgraph.hpp"
#include "abperc/execution.hpp"
#include "abperc/pointprocess.hpp"
#include "abperc/stats.hpp"

namespace abperc {

// ---------------------------------------------------------------------------
// Isolated nodes and the largest nearest-neighbour radius (AB random
// geometric graph on the torus).

/// Per-sample isolation statistics at witness radius r.
///   W        isolated vertices of the AB graph
///   W_tilde  vertices with no witness within r
///   W_bar    witnesses with exactly one vertex within r
///   W_hat    vertices with no other vertex within hat_radius (= 2r)
///   W0       witnesses with no vertex within r
/// Always W_tilde <= W <= W_tilde + W_bar and W_hat <= W.
struct IsolationReport {
    double r = 0.0;
    double hat_radius = 0.0;
    std::size_t W = 0;
    std::size_t W_tilde = 0;
    std::size_t W_bar = 0;
    std::size_t W_hat = 0;
    std::size_t W0 = 0;
};

std::size_t count_isolated(const ABGraph& g);

/// Computes all counts without building the graph. The serial path is the
/// single-threaded reference for the OpenMP kernel.
IsolationReport auxiliary_counts(const PointSet& p1, const PointSet& p2, double r,
                                 Execution exec = Execution::serial);

/// Smallest witness radius at which each vertex has degree >= 1 (closed
/// balls). +inf for a lone vertex.
std::vector<double> isolation_radii(const PointSet& p1, const PointSet& p2, Execution exec = Execution::serial);

/// M_n = sup{r : W(r) > 0}, i.e. the largest isolation radius. Throws
/// std::domain_error when either point set is empty.
double largest_nn_radius(const PointSet& p1, const PointSet& p2, Execution exec = Execution::serial);

struct ConnectivityResult {
    double alpha_star = 0.0;  // equals hi: the smallest probed a that connects
    double lo = 0.0;          // largest probed a with a disconnected graph
    double hi = 0.0;          // smallest probed a with a connected graph
    double cutoff = 0.0;      // r_n(c) used to scale a
    bool degenerate = false;  // at most one vertex
    bool never_connected = false;
    int probes = 0;
};

/// α*_n(c) = inf{a : G_n(cn, a^{1/d} r_n(c)) connected} by doubling then
/// bisection to bracket width tol. n is the expected vertex count of p1.
ConnectivityResult connectivity_threshold(const PointSet& p1, const PointSet& p2, double c, double tol = 1e-3);

// ---------------------------------------------------------------------------
// Crossing-based percolation proxies for the continuum AB model.

struct CrossingReport {
    bool crossed = false;
    int axis = 0;
    std::optional<std::uint32_t> component;
};

/// True iff one component holds a vertex within the witness radius of the
/// low face and a vertex within the witness radius of the high face.
CrossingReport crossing_exists(const ABGraph& g, const PointSet& vertices, const Window& window, int axis = 0);

/// Continuum configuration sampled once at the largest intensities of
/// interest, with a uniform mark per point so that lower intensities are
/// obtained by thinning (monotone coupling in both λ and μ).
struct CoupledPercolationSample {
    PointSet vertices;
    std::vector<double> vertex_marks;
    PointSet witnesses;
    std::vector<double> witness_marks;
    double lambda_max = 0.0;
    double mu_max = 0.0;
};

/// Vertices on [0, L]^d, witnesses on the 2r-dilated box.
CoupledPercolationSample sample_coupled(double lambda_max, double mu_max, double r, double L, int d,
                                        std::uint64_t seed);

/// Smallest μ <= mu_max at which the thinned configuration at (λ, μ)
/// crosses along `axis`; +inf if it never does. Witnesses are added in
/// order of activation with incremental union-find.
double crossing_threshold_mu(const CoupledPercolationSample& sample, double lambda, double r, int axis = 0);

/// Fraction of replications with a crossing of [0, L]^d, Wilson 95% CI.
ProportionEstimate estimate_theta(double lambda, double mu, double r, double L, std::size_t reps,
                                  std::uint64_t master_seed, int d = 2, Execution exec = Execution::serial);

struct MuCriticalEstimate {
    bool detected = false;
    double mu_hat = 0.0;
    double mu_lo = 0.0;  // order-statistic 95% interval
    double mu_hi = 0.0;
    ProportionEstimate at_mu_hat;
    std::vector<double> per_rep_threshold;
};

/// Finite-size proxy for μ_c(λ, r): the μ at which the coupled crossing
/// frequency reaches `target`, by bisection to width tol. Not detected when
/// fewer than target·reps replications cross by mu_max.
MuCriticalEstimate estimate_mu_c(double lambda, double r, double L, double target, double tol, std::size_t reps,
                                 std::uint64_t master_seed, double mu_max = 64.0, int d = 2,
                                 Execution exec = Execution::serial);

/// Coupled crossing frequencies over a μ grid (nondecreasing by construction).
std::vector<ProportionEstimate> sweep_theta(double lambda, const std::vector<double>& mus, double r, double L,
                                            std::size_t reps, std::uint64_t master_seed, int d = 2,
                                            Execution exec = Execution::serial);

// ---------------------------------------------------------------------------
// Vacancy of an r-ball under the coverage process of r-balls (d = 2).

/// True iff B_centre(r) is not covered by the closed r-balls around the
/// points. Decided exactly from uncovered circle crossings and boundary arcs.
bool vacancy_positive(const PointSet& pts, double r, std::array<double, 2> centre = {0.0, 0.0});

/// (1 + nπr² + 4(nπr²)²) exp(-nπr²), valid for 0 < r < 1/2.
double vacancy_bound(double n, double r);

/// Monte Carlo frequency of positive vacancy at the origin, Wilson 95% CI.
ProportionEstimate estimate_vacancy(double n, double r, std::size_t reps, std::uint64_t master_seed,
                                    Execution exec = Execution::serial);

}  // namespace abperc
