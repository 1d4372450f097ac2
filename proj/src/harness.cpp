#include "abperc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "abperc/geometry.hpp"
#include "abperc/lattice.hpp"
#include "abperc/observables.hpp"
#include "abperc/pointprocess.hpp"
#include "abperc/rng.hpp"
#include "abperc/stats.hpp"
#include "abperc/word.hpp"

namespace abperc {

namespace {

using ojson = nlohmann::ordered_json;

template <class T>
ojson opt_json(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(*v)) return nullptr;
    }
    return *v;
}

template <class T>
std::optional<T> opt_get(const nlohmann::json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<T>();
}

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double h = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

ojson proportion_json(const ProportionEstimate& p) {
    return {{"successes", p.successes}, {"trials", p.trials}, {"p", p.p}, {"lo", p.lo}, {"hi", p.hi}};
}

std::pair<PointSet, PointSet> torus_pair(const ExperimentConfig& cfg, std::uint64_t seed) {
    const Window torus = Window::torus(cfg.d);
    return {sample_poisson(torus, cfg.n, derive_seed(seed, 0), "P1"),
            sample_poisson(torus, cfg.c * cfg.n, derive_seed(seed, 1), "P2")};
}

}  // namespace

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::isolated: return "isolated";
        case ExperimentKind::mn: return "mn";
        case ExperimentKind::connectivity: return "connectivity";
        case ExperimentKind::percolation: return "percolation";
        case ExperimentKind::lattice: return "lattice";
        case ExperimentKind::word: return "word";
    }
    return "?";
}

ExperimentKind parse_kind(const std::string& name) {
    for (auto k : {ExperimentKind::isolated, ExperimentKind::mn, ExperimentKind::connectivity,
                   ExperimentKind::percolation, ExperimentKind::lattice, ExperimentKind::word})
        if (name == to_string(k)) return k;
    throw std::invalid_argument("unknown experiment kind: " + name);
}

void ExperimentConfig::validate() const {
    const auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    if (d < 2 || d > kMaxDim) fail("dimension out of range");
    if (r && !(*r > 0.0)) fail("r must be positive");
    if (!(tol > 0.0)) fail("tol must be positive");
    switch (kind) {
        case ExperimentKind::isolated:
        case ExperimentKind::mn:
        case ExperimentKind::connectivity:
            if (!(n > 0.0)) fail("n must be positive");
            if (!(c > 0.0)) fail("c must be positive");
            if (!(beta > 0.0) || !(beta < n)) fail("beta must lie in (0, n)");
            break;
        case ExperimentKind::percolation:
        case ExperimentKind::word:
            if (lambda < 0.0 || mu < 0.0) fail("intensities must be non-negative");
            if (!(window > 0.0)) fail("window must be positive");
            if (kind == ExperimentKind::percolation && !(window > 4.0 * r.value_or(1.0)))
                fail("window must exceed twice the witness radius");
            if (kind == ExperimentKind::word && prefix == 0) fail("prefix must be positive");
            break;
        case ExperimentKind::lattice:
            if (!(p >= 0.0 && p <= 1.0)) fail("p must lie in [0, 1]");
            if (lattice_size == 0) fail("lattice size must be positive");
            break;
    }
}

nlohmann::ordered_json ExperimentConfig::canonical() const {
    ojson j;
    j["kind"] = to_string(kind);
    j["d"] = d;
    switch (kind) {
        case ExperimentKind::isolated:
        case ExperimentKind::mn:
        case ExperimentKind::connectivity:
            j["n"] = n;
            j["c"] = c;
            j["beta"] = beta;
            j["r"] = opt_json(r);
            if (kind == ExperimentKind::connectivity) j["tol"] = tol;
            break;
        case ExperimentKind::percolation:
        case ExperimentKind::word:
            j["lambda"] = lambda;
            j["mu"] = mu;
            j["r"] = r.value_or(1.0);
            j["window"] = window;
            if (kind == ExperimentKind::word) j["prefix"] = prefix;
            break;
        case ExperimentKind::lattice:
            j["p"] = p;
            j["size"] = lattice_size;
            break;
    }
    j["seed"] = seed;
    return j;
}

std::string ExperimentConfig::hash() const { return fnv1a_hex(canonical().dump()); }

double ExperimentConfig::radius() const { return r ? *r : cutoff_radius(n, c, beta, d); }

nlohmann::ordered_json TrialRecord::to_json() const {
    ojson j;
    j["config_hash"] = config_hash;
    j["rep"] = rep;
    j["seed"] = seed;
    j["n_points_1"] = opt_json(n_points_1);
    j["n_points_2"] = opt_json(n_points_2);
    j["W"] = opt_json(W);
    j["W_tilde"] = opt_json(W_tilde);
    j["W_bar"] = opt_json(W_bar);
    j["W_hat"] = opt_json(W_hat);
    j["W0"] = opt_json(W0);
    j["M_n"] = opt_json(M_n);
    j["alpha_star"] = opt_json(alpha_star);
    j["crossed"] = opt_json(crossed);
    j["elapsed_ms"] = opt_json(elapsed_ms);
    return j;
}

TrialRecord TrialRecord::from_json(const nlohmann::json& j) {
    TrialRecord r;
    r.config_hash = j.at("config_hash").get<std::string>();
    r.rep = j.at("rep").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.n_points_1 = opt_get<std::uint64_t>(j, "n_points_1");
    r.n_points_2 = opt_get<std::uint64_t>(j, "n_points_2");
    r.W = opt_get<std::uint64_t>(j, "W");
    r.W_tilde = opt_get<std::uint64_t>(j, "W_tilde");
    r.W_bar = opt_get<std::uint64_t>(j, "W_bar");
    r.W_hat = opt_get<std::uint64_t>(j, "W_hat");
    r.W0 = opt_get<std::uint64_t>(j, "W0");
    r.M_n = opt_get<double>(j, "M_n");
    r.alpha_star = opt_get<double>(j, "alpha_star");
    r.crossed = opt_get<bool>(j, "crossed");
    r.elapsed_ms = opt_get<double>(j, "elapsed_ms");
    return r;
}

const std::vector<std::string>& record_fields() {
    static const std::vector<std::string> fields{"config_hash", "rep", "seed", "n_points_1", "n_points_2",
                                                 "W", "W_tilde", "W_bar", "W_hat", "W0",
                                                 "M_n", "alpha_star", "crossed", "elapsed_ms"};
    return fields;
}

std::string to_jsonl(const TrialRecord& rec) { return rec.to_json().dump() + "\n"; }

std::string csv_header() {
    std::string out;
    for (const auto& f : record_fields()) out += (out.empty() ? "" : ",") + f;
    return out + "\n";
}

std::string to_csv(const TrialRecord& rec) {
    const auto j = rec.to_json();
    std::string out;
    bool first = true;
    for (const auto& f : record_fields()) {
        if (!first) out += ",";
        first = false;
        const auto& v = j[f];
        if (v.is_null()) continue;
        out += v.is_string() ? v.get<std::string>() : v.dump();
    }
    return out + "\n";
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t rep, bool timing) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.config_hash = cfg.hash();
    rec.rep = rep;
    rec.seed = derive_seed(cfg.seed, rep);
    switch (cfg.kind) {
        case ExperimentKind::isolated:
        case ExperimentKind::mn:
        case ExperimentKind::connectivity: {
            const auto [p1, p2] = torus_pair(cfg, rec.seed);
            rec.n_points_1 = p1.size();
            rec.n_points_2 = p2.size();
            if (!p1.empty() && !p2.empty()) rec.M_n = largest_nn_radius(p1, p2);
            if (cfg.kind == ExperimentKind::isolated) {
                const auto rep_counts = auxiliary_counts(p1, p2, cfg.radius());
                rec.W = rep_counts.W;
                rec.W_tilde = rep_counts.W_tilde;
                rec.W_bar = rep_counts.W_bar;
                rec.W_hat = rep_counts.W_hat;
                rec.W0 = rep_counts.W0;
            } else if (cfg.kind == ExperimentKind::connectivity) {
                rec.alpha_star = connectivity_threshold(p1, p2, cfg.c, cfg.tol).alpha_star;
            }
            break;
        }
        case ExperimentKind::percolation: {
            const double r = cfg.r.value_or(1.0);
            const auto sample = sample_coupled(cfg.lambda, cfg.mu, r, cfg.window, cfg.d, rec.seed);
            rec.n_points_1 = sample.vertices.size();
            rec.n_points_2 = sample.witnesses.size();
            rec.crossed = cfg.lambda > 0.0 && cfg.mu > 0.0 && crossing_threshold_mu(sample, cfg.lambda, r) <= cfg.mu;
            break;
        }
        case ExperimentKind::lattice: {
            LatticeSpec spec;
            spec.kind = cfg.d == 2 ? LatticeKind::triangular : LatticeKind::z_star_d;
            spec.dim = cfg.d;
            spec.size = cfg.lattice_size;
            spec.origin.assign(static_cast<std::size_t>(cfg.d), 0.0);
            rec.crossed = site_percolation_crossing(spec, cfg.p, rec.seed);
            break;
        }
        case ExperimentKind::word: {
            const double r = cfg.r.value_or(1.0);
            const Window box = Window::box(cfg.d, 0.0, cfg.window);
            std::vector<PointSet> processes{sample_poisson(box, cfg.lambda, derive_seed(rec.seed, 0), "1"),
                                            sample_poisson(box, cfg.mu, derive_seed(rec.seed, 1), "2")};
            rec.n_points_1 = processes[0].size();
            rec.n_points_2 = processes[1].size();
            const auto path = find_word_occurrence(processes, {r, r}, alternating_word(2, cfg.prefix));
            rec.crossed = path.size() == cfg.prefix;
            break;
        }
    }
    if (timing)
        rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::size_t run_experiment(const ExperimentConfig& cfg, std::ostream& out, const RunOptions& opt) {
    cfg.validate();
    std::vector<std::uint64_t> todo;
    {
        std::vector<std::uint64_t> skip = opt.skip;
        std::sort(skip.begin(), skip.end());
        for (std::uint64_t rep = 0; rep < cfg.reps; ++rep)
            if (!std::binary_search(skip.begin(), skip.end(), rep)) todo.push_back(rep);
    }
    if (opt.format == Format::csv && opt.skip.empty()) out << csv_header();
    const int threads = std::max(1, opt.parallel);
    const std::size_t batch = 4 * static_cast<std::size_t>(threads);
    std::vector<TrialRecord> buffer;
    for (std::size_t first = 0; first < todo.size(); first += batch) {
        const std::size_t count = std::min(batch, todo.size() - first);
        buffer.assign(count, {});
        const auto n = static_cast<long>(count);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1) if (threads > 1)
        for (long i = 0; i < n; ++i) buffer[i] = run_trial(cfg, todo[first + i], opt.timing);
        for (const auto& rec : buffer) out << (opt.format == Format::csv ? to_csv(rec) : to_jsonl(rec));
        out.flush();
        if (!out) throw std::runtime_error("run_experiment: write failed");
    }
    return todo.size();
}

ResumeState scan_existing(std::istream& in, const std::string& config_hash) {
    ResumeState st;
    std::string line;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        const bool terminated = !in.eof();
        const std::size_t next = offset + line.size() + (terminated ? 1 : 0);
        if (line.empty()) {
            if (terminated) st.valid_bytes = next;
            offset = next;
            continue;
        }
        const auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            if (!terminated) break;
            throw std::runtime_error("resume: malformed record at byte " + std::to_string(offset));
        }
        if (!terminated) break;
        const auto rec = TrialRecord::from_json(j);
        if (rec.config_hash != config_hash) throw std::runtime_error("resume: existing records belong to another configuration");
        st.present.push_back(rec.rep);
        st.valid_bytes = next;
        offset = next;
    }
    return st;
}

std::vector<TrialRecord> read_records(std::istream& in) {
    std::vector<TrialRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw std::runtime_error("malformed JSONL at line " + std::to_string(lineno));
        out.push_back(TrialRecord::from_json(j));
    }
    return out;
}

nlohmann::ordered_json summarize(std::vector<TrialRecord> records, double beta) {
    std::sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) { return a.rep < b.rep; });
    ojson s;
    s["count"] = records.size();
    s["config_hash"] = records.empty() ? ojson(nullptr) : ojson(records.front().config_hash);
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].config_hash != records.front().config_hash)
            throw std::invalid_argument("summarize: records from different configurations");
        if (i > 0 && records[i].rep == records[i - 1].rep)
            throw std::invalid_argument("summarize: repeated rep " + std::to_string(records[i].rep));
    }
    s["beta"] = beta;

    const auto numeric = [&](auto getter) {
        std::vector<double> v;
        for (const auto& r : records)
            if (const auto x = getter(r)) v.push_back(static_cast<double>(*x));
        return v;
    };
    std::map<std::string, std::vector<double>> columns;
    columns["n_points_1"] = numeric([](const TrialRecord& r) { return r.n_points_1; });
    columns["n_points_2"] = numeric([](const TrialRecord& r) { return r.n_points_2; });
    columns["W"] = numeric([](const TrialRecord& r) { return r.W; });
    columns["W_tilde"] = numeric([](const TrialRecord& r) { return r.W_tilde; });
    columns["W_bar"] = numeric([](const TrialRecord& r) { return r.W_bar; });
    columns["W_hat"] = numeric([](const TrialRecord& r) { return r.W_hat; });
    columns["W0"] = numeric([](const TrialRecord& r) { return r.W0; });
    columns["M_n"] = numeric([](const TrialRecord& r) { return r.M_n; });
    columns["alpha_star"] = numeric([](const TrialRecord& r) { return r.alpha_star; });

    ojson fields = ojson::object();
    for (const auto& name : record_fields()) {
        const auto it = columns.find(name);
        if (it == columns.end() || it->second.empty()) continue;
        const auto m = moments(it->second);
        ojson f{{"count", m.count}, {"mean", m.mean}, {"variance", m.variance}, {"se", m.se}};
        if (name == "M_n" || name == "alpha_star") {
            f["q1"] = quantile(it->second, 0.25);
            f["median"] = quantile(it->second, 0.5);
            f["q3"] = quantile(it->second, 0.75);
        }
        fields[name] = f;
    }
    s["fields"] = fields;

    std::vector<std::uint64_t> w;
    for (const auto& r : records)
        if (r.W) w.push_back(*r.W);
    if (!w.empty()) {
        std::map<std::uint64_t, std::size_t> table;
        for (auto k : w) ++table[k];
        ojson hist = ojson::object();
        for (const auto& [k, count] : table) hist[std::to_string(k)] = count;
        s["W_histogram"] = hist;
        s["dtv_poisson"] = dtv_poisson(w, beta);
        s["p_W_zero"] = proportion_json(wilson_interval(table.count(0) ? table[0] : 0, w.size()));
    }
    std::size_t crossed = 0, trials = 0;
    for (const auto& r : records) {
        if (!r.crossed) continue;
        ++trials;
        crossed += *r.crossed ? 1 : 0;
    }
    if (trials > 0) s["crossed"] = proportion_json(wilson_interval(crossed, trials));
    return s;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace abperc
