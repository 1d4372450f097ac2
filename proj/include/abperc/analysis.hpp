#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace abperc {

/// Critical probability of Bernoulli site percolation: 1/2 on the
/// triangular lattice (d = 2), numerical value on Z*^3. Other d unsupported.
double site_percolation_threshold(int d);

/// Critical intensity of the planar Gilbert graph with edge rule |x - y| <= 2r
/// (critical filling factor λπr² ≈ 1.1280874).
double gilbert_lambda_c(double r);

/// One line of the bound ledger. `value` may be +inf.
struct BoundEntry {
    std::string name;
    std::optional<double> value;
    bool applicable = false;
    bool vacuous = false;
    bool conditional = false;  // rests on caller-supplied critical intensities
    std::string precondition;
};

/// μ_c(λ, r) >= λ_c(r) - λ, and μ_c = ∞ when λ < λ_c(2r).
std::vector<BoundEntry> mu_c_lower_bounds(double lambda, double r, double lambda_c_r, double lambda_c_2r);

enum class AreaSource { computed, published };

struct UpperBound {
    bool applicable = false;
    double value = 0.0;      // meaningful only when applicable
    double threshold = 0.0;  // -log(1 - p_c) / a
    double area = 0.0;
    double p_c = 0.0;
};

/// -(1/a) log[1 - p_c / (1 - exp(-λ a))] with a = a(d, 2r), when
/// λ > -log(1 - p_c)/a. AreaSource::published substitutes the rounded
/// flower area 0.8227 (d = 2, 2r = 2 only).
UpperBound mu_c_upper_bound(double lambda, double r, int d, AreaSource source = AreaSource::computed);
UpperBound mu_c_upper_bound_with(double lambda, double area, double p_c);

struct WordCondition {
    bool holds = false;
    double product = 0.0;
    double r0 = 0.0;
    double area = 0.0;
    double p_c = 0.0;
};

/// ∏ (1 - exp(-λ_i a(d, r0))) > p_c(d), r0 = 2 min r_i.
WordCondition word_condition(const std::vector<double>& lambdas, const std::vector<double>& radii, int d);

struct MarkedCondition {
    bool holds = false;
    double threshold = 0.0;  // λ* = -2 log(1 - √p_c) / a(d, 2r)
    double p_lo = 0.0;       // open interval of admissible marking probabilities
    double p_hi = 0.0;
    double area = 0.0;
    double p_c = 0.0;
};

MarkedCondition marked_ab_condition(double lambda, double r, int d, double tol = 1e-6);

struct BoundInputs {
    double lambda = 0.0;
    std::optional<double> mu;
    double r = 1.0;
    int d = 2;
    std::optional<double> p;
    std::optional<double> lambda_c_r;
    std::optional<double> lambda_c_2r;
    AreaSource area_source = AreaSource::computed;
};

/// Every bound that applies to the inputs, with its precondition.
nlohmann::ordered_json bound_ledger(const BoundInputs& in);

}  // namespace abperc
