#include "abperc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "abperc/geometry.hpp"
#include "abperc/numerics.hpp"

namespace abperc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double area_for(int d, double two_r, AreaSource source) {
    if (source == AreaSource::published) {
        if (d != 2 || two_r != 2.0) throw std::invalid_argument("published flower area exists only for d = 2, 2r = 2");
        return kPublishedFlowerArea22;
    }
    return cell_area(d, two_r);
}

nlohmann::ordered_json entry_json(const BoundEntry& e) {
    nlohmann::ordered_json j;
    j["name"] = e.name;
    if (!e.value)
        j["value"] = nullptr;
    else if (std::isinf(*e.value))
        j["value"] = "inf";
    else
        j["value"] = *e.value;
    j["applicable"] = e.applicable;
    j["vacuous"] = e.vacuous;
    j["conditional"] = e.conditional;
    j["precondition"] = e.precondition;
    return j;
}

}  // namespace

double site_percolation_threshold(int d) {
    if (d == 2) return 0.5;
    if (d == 3) return 0.0976445;
    throw std::domain_error("site_percolation_threshold: only d = 2 and d = 3 are tabulated");
}

double gilbert_lambda_c(double r) {
    if (!(r > 0.0)) throw std::domain_error("gilbert_lambda_c: r must be positive");
    return 1.1280874 / (std::numbers::pi * r * r);
}

std::vector<BoundEntry> mu_c_lower_bounds(double lambda, double r, double lambda_c_r, double lambda_c_2r) {
    if (!(r > 0.0)) throw std::domain_error("mu_c_lower_bounds: r must be positive");
    std::vector<BoundEntry> out;
    BoundEntry infinite{"mu_c_infinite", kInf, lambda < lambda_c_2r, false, true, "lambda < lambda_c(2r)"};
    if (!infinite.applicable) infinite.value.reset();
    out.push_back(infinite);
    const double gap = lambda_c_r - lambda;
    out.push_back({"mu_c_ge_lambda_c_minus_lambda", std::max(gap, 0.0), true, gap <= 0.0, true,
                   "lambda_c(r) - lambda > 0 for a non-trivial bound"});
    return out;
}

UpperBound mu_c_upper_bound_with(double lambda, double area, double p_c) {
    if (!(area > 0.0)) throw std::domain_error("mu_c_upper_bound: area must be positive");
    if (!(p_c > 0.0 && p_c < 1.0)) throw std::domain_error("mu_c_upper_bound: p_c must lie in (0, 1)");
    UpperBound b;
    b.area = area;
    b.p_c = p_c;
    b.threshold = -std::log1p(-p_c) / area;
    b.applicable = lambda > b.threshold;
    if (b.applicable) b.value = -std::log1p(-p_c / -std::expm1(-lambda * area)) / area;
    return b;
}

UpperBound mu_c_upper_bound(double lambda, double r, int d, AreaSource source) {
    if (!(r > 0.0)) throw std::domain_error("mu_c_upper_bound: r must be positive");
    return mu_c_upper_bound_with(lambda, area_for(d, 2.0 * r, source), site_percolation_threshold(d));
}

WordCondition word_condition(const std::vector<double>& lambdas, const std::vector<double>& radii, int d) {
    if (lambdas.empty() || lambdas.size() != radii.size())
        throw std::invalid_argument("word_condition: need one radius per intensity");
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        if (lambdas[i] < 0.0 || !(radii[i] > 0.0)) throw std::domain_error("word_condition: bad intensity or radius");
    WordCondition w;
    w.r0 = 2.0 * *std::min_element(radii.begin(), radii.end());
    w.area = cell_area(d, w.r0);
    w.p_c = site_percolation_threshold(d);
    w.product = 1.0;
    for (double l : lambdas) w.product *= -std::expm1(-l * w.area);
    w.holds = w.product > w.p_c;
    return w;
}

MarkedCondition marked_ab_condition(double lambda, double r, int d, double tol) {
    if (!(lambda > 0.0) || !(r > 0.0)) throw std::domain_error("marked_ab_condition: lambda and r must be positive");
    MarkedCondition m;
    m.area = cell_area(d, 2.0 * r);
    m.p_c = site_percolation_threshold(d);
    m.threshold = -2.0 * std::log(1.0 - std::sqrt(m.p_c)) / m.area;
    m.holds = lambda > m.threshold;
    if (!m.holds) return m;
    const auto excess = [&](double p) {
        return -std::expm1(-lambda * p * m.area) * -std::expm1(-lambda * (1.0 - p) * m.area) - m.p_c;
    };
    m.p_lo = numerics::bisect(excess, 0.0, 0.5, tol);
    m.p_hi = numerics::bisect(excess, 0.5, 1.0, tol);
    return m;
}

nlohmann::ordered_json bound_ledger(const BoundInputs& in) {
    nlohmann::ordered_json j;
    auto& inputs = j["inputs"];
    inputs["lambda"] = in.lambda;
    inputs["mu"] = in.mu ? nlohmann::ordered_json(*in.mu) : nullptr;
    inputs["r"] = in.r;
    inputs["d"] = in.d;
    inputs["p"] = in.p ? nlohmann::ordered_json(*in.p) : nullptr;
    inputs["area_source"] = in.area_source == AreaSource::published ? "published" : "computed";

    const double two_r_area = area_for(in.d, 2.0 * in.r, in.area_source);
    const double p_c = site_percolation_threshold(in.d);
    j["constants"] = {{"p_c", p_c}, {"cell_area_2r", two_r_area}};

    auto entries = nlohmann::ordered_json::array();
    std::optional<double> lc_r = in.lambda_c_r;
    std::optional<double> lc_2r = in.lambda_c_2r;
    std::string lc_source = "caller";
    if (!lc_r && !lc_2r && in.d == 2) {
        lc_r = gilbert_lambda_c(in.r);
        lc_2r = gilbert_lambda_c(2.0 * in.r);
        lc_source = "literature";
    }
    if (lc_r && lc_2r) {
        j["constants"]["lambda_c_r"] = *lc_r;
        j["constants"]["lambda_c_2r"] = *lc_2r;
        j["constants"]["lambda_c_source"] = lc_source;
        for (const auto& e : mu_c_lower_bounds(in.lambda, in.r, *lc_r, *lc_2r)) entries.push_back(entry_json(e));
    }

    const auto ub = mu_c_upper_bound_with(in.lambda, two_r_area, p_c);
    BoundEntry upper{"mu_c_upper", std::nullopt, ub.applicable, false, false,
                     "lambda > -log(1 - p_c) / a(d, 2r) = " + std::to_string(ub.threshold)};
    if (ub.applicable) upper.value = ub.value;
    auto upper_json = entry_json(upper);
    if (in.mu && ub.applicable) upper_json["mu_exceeds_bound"] = *in.mu > ub.value;
    entries.push_back(upper_json);

    const double mu = in.mu.value_or(in.lambda);
    const auto word = word_condition({in.lambda, mu}, {in.r, in.r}, in.d);
    nlohmann::ordered_json wj;
    wj["name"] = "alternating_word_occurs";
    wj["value"] = word.product;
    wj["applicable"] = word.holds;
    wj["vacuous"] = false;
    wj["conditional"] = false;
    wj["precondition"] = "prod(1 - exp(-lambda_i a(d, r0))) > p_c, r0 = " + std::to_string(word.r0);
    entries.push_back(wj);

    const auto marked = marked_ab_condition(in.lambda, in.r, in.d);
    nlohmann::ordered_json mj;
    mj["name"] = "marked_model_percolates";
    mj["value"] = marked.holds ? nlohmann::ordered_json::array({marked.p_lo, marked.p_hi}) : nlohmann::ordered_json(nullptr);
    mj["applicable"] = marked.holds;
    mj["vacuous"] = false;
    mj["conditional"] = false;
    mj["precondition"] = "lambda > " + std::to_string(marked.threshold);
    if (in.p && marked.holds) mj["p_inside_interval"] = *in.p > marked.p_lo && *in.p < marked.p_hi;
    entries.push_back(mj);

    j["bounds"] = entries;
    return j;
}

}  // namespace abperc
