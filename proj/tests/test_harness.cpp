#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"

#include "abperc/harness.hpp"
#include "abperc/stats.hpp"

using namespace abperc;
using doctest::Approx;

namespace {

ExperimentConfig small_isolated() {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::isolated;
    cfg.n = 2000.0;
    cfg.c = 0.8;
    cfg.reps = 12;
    cfg.seed = 99;
    return cfg;
}

std::string run_to_string(const ExperimentConfig& cfg, RunOptions opt = {}) {
    std::ostringstream os;
    run_experiment(cfg, os, opt);
    return os.str();
}

}  // namespace

TEST_CASE("stats helpers") {
    const auto w = wilson_interval(0, 10);
    CHECK(w.p == 0.0);
    CHECK(w.lo == 0.0);
    CHECK(w.hi > 0.0);
    CHECK_THROWS_AS(wilson_interval(5, 4), std::invalid_argument);
    const std::vector<double> one{3.0};
    CHECK(moments(one).variance == 0.0);

    std::vector<std::uint64_t> zeros(100, 0);
    CHECK(dtv_poisson(zeros, 1.0) == Approx(1.0 - std::exp(-1.0)));
    // Exact Poisson(2) proportions in 10^6 samples.
    std::vector<std::uint64_t> table;
    for (std::uint64_t k = 0; k < 30; ++k) {
        const auto count = static_cast<std::size_t>(std::llround(poisson_pmf(k, 2.0) * 1e6));
        table.insert(table.end(), count, k);
    }
    CHECK(dtv_poisson(table, 2.0) < 1e-5);
    CHECK_THROWS(dtv_poisson(std::vector<std::uint64_t>{}, 1.0));
}

TEST_CASE("records are deterministic and ordered") {
    const auto cfg = small_isolated();
    const auto a = run_to_string(cfg);
    const auto b = run_to_string(cfg);
    CHECK(a == b);
    RunOptions par;
    par.parallel = 4;
    CHECK(run_to_string(cfg, par) == a);

    std::istringstream in(a);
    const auto recs = read_records(in);
    REQUIRE(recs.size() == 12);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(recs[i].rep == i);
        CHECK(recs[i].W_tilde <= recs[i].W);
        CHECK(*recs[i].W <= *recs[i].W_tilde + *recs[i].W_bar);
        CHECK(!recs[i].elapsed_ms);
    }
    const auto j = nlohmann::ordered_json::parse(a.substr(0, a.find('\n')));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == record_fields());

    // A single replication is reproducible on its own.
    CHECK(to_jsonl(run_trial(cfg, 7)) == to_jsonl(recs[7]));
}

TEST_CASE("config hash") {
    auto cfg = small_isolated();
    const auto h = cfg.hash();
    CHECK(h.size() == 16);
    cfg.reps = 500;
    CHECK(cfg.hash() == h);
    cfg.c = 0.9;
    CHECK(cfg.hash() != h);
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("resume after an interruption") {
    const auto cfg = small_isolated();
    const auto full = run_to_string(cfg);
    // Keep five complete lines plus half of the sixth.
    std::size_t cut = 0;
    for (int i = 0; i < 5; ++i) cut = full.find('\n', cut) + 1;
    const std::string partial = full.substr(0, cut + 40);
    std::istringstream scan(partial);
    const auto st = scan_existing(scan, cfg.hash());
    CHECK(st.present.size() == 5);
    CHECK(st.valid_bytes == cut);

    RunOptions opt;
    opt.skip = st.present;
    const std::string resumed = partial.substr(0, st.valid_bytes) + run_to_string(cfg, opt);
    CHECK(resumed == full);

    std::istringstream a(full), b(resumed);
    CHECK(summarize(read_records(a)) == summarize(read_records(b)));

    auto other = cfg;
    other.seed = 1;
    std::istringstream again(full);
    CHECK_THROWS_AS(scan_existing(again, other.hash()), std::runtime_error);
}

TEST_CASE("summary") {
    const auto empty = summarize({});
    CHECK(empty["count"] == 0);

    const auto cfg = small_isolated();
    std::istringstream in(run_to_string(cfg));
    auto recs = read_records(in);
    const auto s = summarize(recs);
    CHECK(s["count"] == 12);
    CHECK(s["fields"].contains("W"));
    CHECK(s["dtv_poisson"].get<double>() >= 0.0);
    CHECK(s["dtv_poisson"].get<double>() <= 1.0);

    std::reverse(recs.begin(), recs.end());
    CHECK(summarize(recs) == s);
    std::vector<TrialRecord> first(recs.begin(), recs.begin() + 5), second(recs.begin() + 5, recs.end());
    second.insert(second.end(), first.begin(), first.end());
    CHECK(summarize(second) == s);

    auto one = std::vector<TrialRecord>(recs.begin(), recs.begin() + 1);
    CHECK(summarize(one)["fields"]["W"]["variance"] == 0.0);

    auto mixed = recs;
    mixed[0].config_hash = "0000000000000000";
    CHECK_THROWS_AS(summarize(mixed), std::invalid_argument);
    auto dup = recs;
    dup.push_back(recs[0]);
    CHECK_THROWS_AS(summarize(dup), std::invalid_argument);
}

TEST_CASE("zero reps and other kinds") {
    auto cfg = small_isolated();
    cfg.reps = 0;
    CHECK(run_to_string(cfg).empty());

    ExperimentConfig lat;
    lat.kind = ExperimentKind::lattice;
    lat.p = 1.0;
    lat.lattice_size = 16;
    lat.reps = 3;
    std::istringstream in(run_to_string(lat));
    for (const auto& r : read_records(in)) CHECK(*r.crossed);

    ExperimentConfig perc;
    perc.kind = ExperimentKind::percolation;
    perc.mu = 0.0;
    perc.window = 10.0;
    perc.reps = 3;
    std::istringstream pin(run_to_string(perc));
    for (const auto& r : read_records(pin)) CHECK_FALSE(*r.crossed);

    ExperimentConfig conn = small_isolated();
    conn.kind = ExperimentKind::connectivity;
    conn.reps = 2;
    std::istringstream cin(run_to_string(conn));
    for (const auto& r : read_records(cin)) CHECK(*r.alpha_star >= std::pow(*r.M_n / conn.radius(), 2) * (1.0 - 1e-9));

    ExperimentConfig bad;
    bad.beta = 5000.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    RunOptions csv;
    csv.format = Format::csv;
    cfg.reps = 2;
    const auto text = run_to_string(cfg, csv);
    CHECK(text.substr(0, text.find('\n') + 1) == csv_header());
}
