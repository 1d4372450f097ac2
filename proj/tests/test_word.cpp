#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

#include "abperc/abgraph.hpp"
#include "abperc/rng.hpp"
#include "abperc/word.hpp"

using namespace abperc;

TEST_CASE("word fixtures") {
    const auto box = Window::box(2, 0.0, 10.0);
    const auto a = oracle::points(box, {{1.0, 1.0}, {5.0, 5.0}});
    const auto b = oracle::points(box, {{3.0, 1.0}});
    const std::vector<double> radii{1.0, 1.0};

    const auto one = find_word_occurrence({a, b}, radii, {0});
    REQUIRE(one.size() == 1);
    CHECK(one[0].symbol == 0);
    CHECK(find_word_occurrence({PointSet(box, 0.0), b}, radii, {0}).empty());

    // Distance exactly r1 + r2 is a valid step.
    const auto path = find_word_occurrence({a, b}, radii, {0, 1});
    REQUIRE(path.size() == 2);
    CHECK(path[0].index == 0);
    CHECK(path[1].index == 0);

    // (0, 1, 0) needs a second, distinct point of process 0 near b.
    CHECK(find_word_occurrence({a, b}, radii, {0, 1, 0}).size() == 2);
    const auto a2 = oracle::points(box, {{1.0, 1.0}, {4.5, 2.0}});
    const auto full = find_word_occurrence({a2, b}, radii, {0, 1, 0});
    CHECK(full.size() == 3);
    CHECK(is_word_path({a2, b}, radii, {0, 1, 0}, full));
    CHECK_FALSE(is_word_path({a2, b}, radii, {0, 1, 0}, {{0, 0}, {1, 0}, {0, 0}}));
    CHECK_THROWS_AS(find_word_occurrence({a, b}, radii, {2}), std::invalid_argument);
}

TEST_CASE("alternating words are AB paths") {
    const double r = 1.0;
    int found = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto box = Window::box(2, 0.0, 30.0);
        std::vector<PointSet> procs{sample_poisson(box, 2.0, derive_seed(seed, 0)), sample_poisson(box, 2.0, derive_seed(seed, 1))};
        const auto word = alternating_word(2, 20);
        const auto path = find_word_occurrence(procs, {r, r}, word);
        CHECK(is_word_path(procs, {r, r}, word, path));
        found += path.size() == word.size();
        const auto g = build_ab_continuum(procs[0], procs[1], r);
        for (std::size_t i = 0; i + 2 < path.size(); i += 2) {
            const auto u = path[i].index, v = path[i + 2].index;
            const auto wit = g.vertex_witnesses(u);
            CHECK(std::find(wit.begin(), wit.end(), path[i + 1].index) != wit.end());
            const auto nb = g.neighbours(u);
            CHECK(std::find(nb.begin(), nb.end(), v) != nb.end());
        }
    }
    CHECK(found >= 18);
}
