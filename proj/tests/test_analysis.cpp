#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "abperc/analysis.hpp"
#include "abperc/geometry.hpp"

using namespace abperc;
using doctest::Approx;

TEST_CASE("site percolation thresholds") {
    CHECK(site_percolation_threshold(2) == 0.5);
    CHECK(site_percolation_threshold(3) == Approx(0.0976445));
    CHECK_THROWS_AS(site_percolation_threshold(4), std::domain_error);
}

TEST_CASE("lower bounds on mu_c") {
    const auto below = mu_c_lower_bounds(0.1, 1.0, 1.4, 0.35);
    CHECK(below[0].applicable);
    CHECK(std::isinf(*below[0].value));

    const auto gap = mu_c_lower_bounds(1.0, 1.0, 1.4, 0.35);
    CHECK_FALSE(gap[0].applicable);
    CHECK(*gap[1].value == Approx(0.4));
    CHECK_FALSE(gap[1].vacuous);

    const auto at = mu_c_lower_bounds(1.4, 1.0, 1.4, 0.35);
    CHECK(*at[1].value == 0.0);
    CHECK(at[1].vacuous);
    for (const auto& e : at) CHECK(e.conditional);
}

TEST_CASE("upper bound on mu_c") {
    const auto pub = mu_c_upper_bound(0.85, 1.0, 2, AreaSource::published);
    CHECK(pub.applicable);
    CHECK(pub.value == Approx(6.2001).epsilon(1e-4));
    CHECK(pub.threshold == Approx(0.843).epsilon(1e-3));

    const auto exact = mu_c_upper_bound(0.85, 1.0, 2);
    CHECK(exact.applicable);
    CHECK(exact.area == Approx(0.822661420747869).epsilon(1e-11));
    CHECK(exact.value == Approx(6.206854690723121).epsilon(1e-9));
    CHECK(exact.threshold == Approx(0.8425673).epsilon(1e-6));

    CHECK_FALSE(mu_c_upper_bound(0.8, 1.0, 2).applicable);
    CHECK_THROWS_AS(mu_c_upper_bound(0.85, 2.0, 2, AreaSource::published), std::invalid_argument);

    const auto far = mu_c_upper_bound(1e6, 1.0, 2);
    CHECK(far.value == Approx(far.threshold).epsilon(1e-9));

    double prev = 1e300;
    for (double lambda = 0.86; lambda < 5.0; lambda += 0.05) {
        const double v = mu_c_upper_bound(lambda, 1.0, 2).value;
        CHECK(v < prev);
        prev = v;
    }
    prev = 1e300;
    for (double a = 0.9; a < 3.0; a += 0.1) {
        const double v = mu_c_upper_bound_with(2.0, a, 0.5).value;
        CHECK(v < prev);
        prev = v;
    }
    const auto z3 = mu_c_upper_bound(5.0, 1.0, 3);
    CHECK(z3.area == Approx(std::pow(1.0 / std::sqrt(3.0), 3)));
}

TEST_CASE("word condition") {
    const auto low = word_condition({0.85, 0.85}, {1.0, 1.0}, 2);
    CHECK_FALSE(low.holds);
    CHECK(low.product == Approx(0.253).epsilon(1e-2));
    const auto high = word_condition({3.0, 3.0}, {1.0, 1.0}, 2);
    CHECK(high.holds);
    CHECK(high.product == Approx(0.838).epsilon(2e-3));
    CHECK_FALSE(word_condition({1e-9, 5.0}, {1.0, 1.0}, 2).holds);
    CHECK(word_condition({1.0, 1.0}, {0.5, 2.0}, 2).r0 == 1.0);
    CHECK_THROWS_AS(word_condition({1.0}, {1.0, 1.0}, 2), std::invalid_argument);
}

TEST_CASE("marked AB condition") {
    const auto below = marked_ab_condition(2.9, 1.0, 2);
    CHECK_FALSE(below.holds);
    CHECK(below.threshold == Approx(2.985304).epsilon(1e-6));
    CHECK(-2.0 * std::log(1.0 - std::sqrt(0.5)) / kPublishedFlowerArea22 == Approx(2.985).epsilon(1e-3));

    const auto m = marked_ab_condition(3.0, 1.0, 2);
    CHECK(m.holds);
    CHECK(m.p_lo < 0.5);
    CHECK(m.p_hi > 0.5);
    CHECK(m.p_lo + m.p_hi == Approx(1.0).epsilon(1e-6));
    const auto f = [&](double p) {
        return (1.0 - std::exp(-3.0 * p * m.area)) * (1.0 - std::exp(-3.0 * (1.0 - p) * m.area));
    };
    CHECK(f(m.p_lo) == Approx(0.5).epsilon(1e-5));
    for (double lambda : {3.5, 5.0, 10.0}) {
        const auto mm = marked_ab_condition(lambda, 1.0, 2);
        CHECK(mm.p_lo < 0.5);
        CHECK(mm.p_hi > 0.5);
        CHECK(mm.p_lo < m.p_lo);
    }
}

TEST_CASE("bound ledger") {
    BoundInputs in;
    in.lambda = 0.85;
    in.r = 1.0;
    in.mu = 7.0;
    const auto j = bound_ledger(in);
    CHECK(j["inputs"]["lambda"] == 0.85);
    bool saw_upper = false;
    for (const auto& e : j["bounds"]) {
        CHECK(e.contains("precondition"));
        CHECK(e.contains("applicable"));
        if (e["name"] == "mu_c_upper") {
            saw_upper = true;
            CHECK(e["mu_exceeds_bound"] == true);
        }
    }
    CHECK(saw_upper);
    in.area_source = AreaSource::published;
    const auto pub = bound_ledger(in);
    for (const auto& e : pub["bounds"])
        if (e["name"] == "mu_c_upper") CHECK(e["value"].get<double>() == Approx(6.2001).epsilon(1e-4));
}
