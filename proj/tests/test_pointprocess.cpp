#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"

#include "abperc/pointprocess.hpp"
#include "abperc/spatial_index.hpp"
#include "abperc/stats.hpp"

using namespace abperc;
using doctest::Approx;

TEST_CASE("window validation") {
    CHECK_THROWS_AS(Window({0.0, 0.0}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(Window({0.0, 0.0}, {1.0, 2.0}, true), std::invalid_argument);
    const auto w = Window::box(2, -1.0, 1.0);
    CHECK(w.volume() == Approx(4.0));
    CHECK(w.dilated(0.5).contains(w));
    CHECK_FALSE(w.contains(w.dilated(0.5)));
    CHECK_FALSE(w.dilated(0.5).wraps());
    CHECK(Window::torus(3).metric().wraps());
}

TEST_CASE("poisson sampling") {
    const auto w = Window::torus(2);
    CHECK(sample_poisson(w, 0.0, 1).empty());
    CHECK_THROWS_AS(sample_poisson(w, -1.0, 1), std::domain_error);

    const auto a = sample_poisson(w, 500.0, 42);
    const auto b = sample_poisson(w, 500.0, 42);
    CHECK(a.coords == b.coords);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(w.contains(a.point(i)));

    std::vector<double> counts;
    for (std::uint64_t s = 0; s < 10000; ++s) counts.push_back(static_cast<double>(sample_poisson(w, 100.0, s).size()));
    const auto m = moments(counts);
    CHECK(std::abs(m.mean - 100.0) <= 3.0 * m.se);
    CHECK(m.variance == Approx(100.0).epsilon(0.05));
}

TEST_CASE("thinning") {
    const auto w = Window::box(2, 0.0, 1.0);
    const auto ps = sample_poisson(w, 200.0, 9);
    const auto [all, none] = split_marks(ps, 1.0, 1);
    CHECK(all.size() == ps.size());
    CHECK(none.empty());
    const auto [nothing, every] = split_marks(ps, 0.0, 1);
    CHECK(nothing.empty());
    CHECK(every.size() == ps.size());
    CHECK_THROWS_AS(split_marks(ps, 1.5, 1), std::domain_error);

    std::vector<double> first, second;
    for (std::uint64_t s = 0; s < 4000; ++s) {
        const auto [x, y] = split_marks(sample_poisson(w, 200.0, 1000 + s), 0.5, s);
        first.push_back(static_cast<double>(x.size()));
        second.push_back(static_cast<double>(y.size()));
    }
    const auto mx = moments(first);
    const auto my = moments(second);
    CHECK(std::abs(mx.mean - 100.0) <= 3.0 * mx.se);
    double cov = 0.0;
    for (std::size_t i = 0; i < first.size(); ++i) cov += (first[i] - mx.mean) * (second[i] - my.mean);
    cov /= static_cast<double>(first.size() - 1);
    // Independent Poisson(100) counts: correlation ~ N(0, 1/n).
    CHECK(std::abs(cov / std::sqrt(mx.variance * my.variance)) < 4.0 / std::sqrt(4000.0));
}

TEST_CASE("palm insertion") {
    const auto w = Window::torus(2);
    PointSet empty(w, 10.0);
    const std::vector<double> x{0.3, 0.4};
    const auto one = palm_insert(empty, x);
    CHECK(one.size() == 1);
    const auto ps = sample_poisson(w, 50.0, 3);
    CHECK(palm_insert(ps, x).size() == ps.size() + 1);
    CHECK_THROWS_AS(palm_insert(ps, std::vector<double>{1.5, 0.0}), std::domain_error);
}

TEST_CASE("point set dumps") {
    const auto ps = sample_poisson(Window::box(3, 0.0, 2.0), 2.0, 17, "P1");
    std::ostringstream os;
    write_csv(os, ps);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "id,x1,x2,x3");
    std::size_t rows = 0;
    for (std::string line; std::getline(is, line);) ++rows;
    CHECK(rows == ps.size());

    const auto j = to_json(ps);
    CHECK(j["seed"] == 17);
    CHECK(j["window"]["highs"][2] == 2.0);
    CHECK(j["points"].size() == ps.size());
}

TEST_CASE("spatial index matches a scan") {
    for (bool torus : {true, false}) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const auto w = torus ? Window::torus(2) : Window::box(2, 0.0, 1.0);
            const auto ps = sample_poisson(w, 300.0, seed);
            const double cell = 0.01 + 0.2 * static_cast<double>(seed % 7) / 7.0;
            const SpatialIndex index(ps, cell);
            const auto q = sample_poisson(w, 25.0, 1000 + seed);
            const auto m = w.metric();
            for (std::size_t k = 0; k < q.size(); ++k) {
                const double rho = 0.02 * static_cast<double>(k % 30);
                std::vector<std::uint32_t> expect;
                for (std::uint32_t i = 0; i < ps.size(); ++i)
                    if (m.distance(ps.point(i), q.point(k)) <= rho) expect.push_back(i);
                CHECK(index.range_query(q.point(k), rho) == expect);
            }
        }
    }
    PointSet pair(Window::torus(2), 0.0);
    pair.push_back(std::vector<double>{0.99, 0.5});
    const SpatialIndex index(pair, 0.05);
    CHECK(index.range_query(std::vector<double>{0.01, 0.5}, 0.05).size() == 1);
    CHECK(index.range_query(std::vector<double>{0.99, 0.5}, 0.0).size() == 1);
    CHECK(index.range_query(std::vector<double>{0.98, 0.5}, 0.0).empty());
}

TEST_CASE("spatial index in higher dimension") {
    const auto w = Window::torus(4);
    const auto ps = sample_poisson(w, 2000.0, 77);
    const SpatialIndex index(ps, 0.1);
    const auto q = sample_poisson(w, 20.0, 78);
    for (std::size_t k = 0; k < q.size(); ++k) {
        std::size_t expect = 0;
        for (std::size_t i = 0; i < ps.size(); ++i) expect += w.metric().distance(ps.point(i), q.point(k)) <= 0.25;
        CHECK(index.count_within(q.point(k), 0.25) == expect);
    }
}
