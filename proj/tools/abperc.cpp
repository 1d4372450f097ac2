#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "abperc/abgraph.hpp"
#include "abperc/analysis.hpp"
#include "abperc/geometry.hpp"
#include "abperc/harness.hpp"
#include "abperc/observables.hpp"
#include "abperc/pointprocess.hpp"
#include "abperc/rng.hpp"

using namespace abperc;
using ojson = nlohmann::ordered_json;

namespace {

struct CommonFlags {
    int dim = 2;
    double n = 1000.0;
    double c = 1.0;
    double beta = 1.0;
    double lambda = 1.0;
    double mu = 1.0;
    std::optional<double> r;
    double window = 30.0;
    std::size_t reps = 200;
    std::uint64_t seed = 1;
    std::string out;
    bool resume = false;
    int parallel = 1;
    std::string format = "jsonl";
    bool timing = false;
};

void add_common(CLI::App* app, CommonFlags& f) {
    app->add_option("--dim", f.dim, "Ambient dimension")->capture_default_str();
    app->add_option("--n", f.n, "Vertex intensity on the unit torus")->capture_default_str();
    app->add_option("--c", f.c, "Witness/vertex intensity ratio")->capture_default_str();
    app->add_option("--beta", f.beta, "Target mean isolated count")->capture_default_str();
    app->add_option("--lambda", f.lambda, "Vertex intensity (continuum models)")->capture_default_str();
    app->add_option("--mu", f.mu, "Witness intensity (continuum models)")->capture_default_str();
    app->add_option("--r", f.r, "Radius (default r_n(c, beta) on the torus, 1 otherwise)");
    app->add_option("--window", f.window, "Box side for the continuum models")->capture_default_str();
    app->add_option("--reps", f.reps, "Replications")->capture_default_str();
    app->add_option("--seed", f.seed, "Master seed")->capture_default_str();
    app->add_option("--out", f.out, "Output path (stdout when omitted)");
    app->add_flag("--resume", f.resume, "Skip replications already in --out");
    app->add_option("--parallel", f.parallel, "Replications in flight")->capture_default_str();
    app->add_option("--format", f.format, "Record format")->check(CLI::IsMember({"jsonl", "csv"}))->capture_default_str();
    app->add_flag("--timing", f.timing, "Fill elapsed_ms (records are then no longer reproducible)");
}

ExperimentConfig make_config(ExperimentKind kind, const CommonFlags& f) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.d = f.dim;
    cfg.n = f.n;
    cfg.c = f.c;
    cfg.beta = f.beta;
    cfg.r = f.r;
    cfg.lambda = f.lambda;
    cfg.mu = f.mu;
    cfg.window = f.window;
    cfg.reps = f.reps;
    cfg.seed = f.seed;
    return cfg;
}

void run(const ExperimentConfig& cfg, const CommonFlags& f) {
    RunOptions opt;
    opt.parallel = f.parallel;
    opt.timing = f.timing;
    opt.format = f.format == "csv" ? Format::csv : Format::jsonl;
    if (f.out.empty()) {
        if (f.resume) throw std::invalid_argument("--resume needs --out");
        run_experiment(cfg, std::cout, opt);
        return;
    }
    std::ios::openmode mode = std::ios::out | std::ios::trunc;
    if (f.resume && std::filesystem::exists(f.out)) {
        if (opt.format != Format::jsonl) throw std::invalid_argument("--resume supports jsonl only");
        std::ifstream in(f.out);
        const auto st = scan_existing(in, cfg.hash());
        in.close();
        std::filesystem::resize_file(f.out, st.valid_bytes);
        opt.skip = st.present;
        mode = std::ios::out | std::ios::app;
    }
    std::ofstream out(f.out, mode);
    if (!out) throw std::runtime_error("cannot open " + f.out);
    run_experiment(cfg, out, opt);
}

void print(const ojson& j) { std::cout << j.dump(2) << "\n"; }

ojson number(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AB random geometric graphs and continuum AB percolation"};
    app.require_subcommand(1);

    double eta_u = 1.0, eta_s = 1.0;
    int dim = 2;
    auto* eta_cmd = app.add_subcommand("eta", "Normalised lens volume eta(u, s, d)");
    eta_cmd->add_option("--u", eta_u)->required();
    eta_cmd->add_option("--s", eta_s)->required();
    eta_cmd->add_option("--dim", dim)->capture_default_str();
    eta_cmd->callback([&] {
        print({{"u", eta_u}, {"s", eta_s}, {"d", dim}, {"eta", eta(eta_u, eta_s, dim)},
               {"lower_bound", eta_lower_bound(eta_u, eta_s, dim)}});
    });

    double alpha_c = 1.0, tol = 1e-6;
    auto* alpha_cmd = app.add_subcommand("alpha", "alpha(c) = inf{a : a eta(a, c) > 1}");
    alpha_cmd->add_option("--c", alpha_c)->required();
    alpha_cmd->add_option("--dim", dim)->capture_default_str();
    alpha_cmd->add_option("--tol", tol)->capture_default_str();
    alpha_cmd->callback([&] {
        print({{"c", alpha_c}, {"d", dim}, {"alpha", alpha_of_c(alpha_c, dim, tol)},
               {"upper_bound", alpha_upper_bound(alpha_c, dim)}});
    });

    auto* c0_cmd = app.add_subcommand("c0", "Root of eta(c) + 1/c = 1");
    c0_cmd->add_option("--dim", dim)->capture_default_str();
    c0_cmd->add_option("--tol", tol)->capture_default_str();
    c0_cmd->callback([&] { print({{"d", dim}, {"c0", c_zero(dim, tol)}}); });

    double area_r = 2.0;
    auto* area_cmd = app.add_subcommand("cell-area", "Flower (d = 2) or cube (d >= 3) area a(d, r)");
    area_cmd->add_option("--dim", dim)->capture_default_str();
    area_cmd->add_option("--r", area_r)->capture_default_str();
    area_cmd->callback([&] { print({{"d", dim}, {"r", area_r}, {"a", cell_area(dim, area_r)}}); });

    BoundInputs bounds;
    std::optional<double> b_mu, b_p, b_lcr, b_lc2r;
    std::string area_source = "computed";
    auto* bounds_cmd = app.add_subcommand("bounds", "Ledger of analytic bounds on mu_c");
    bounds_cmd->add_option("--lambda", bounds.lambda)->required();
    bounds_cmd->add_option("--mu", b_mu);
    bounds_cmd->add_option("--r", bounds.r)->capture_default_str();
    bounds_cmd->add_option("--dim", bounds.d)->capture_default_str();
    bounds_cmd->add_option("--p", b_p, "Marking probability");
    bounds_cmd->add_option("--lambda-c-r", b_lcr, "Critical Gilbert intensity at r");
    bounds_cmd->add_option("--lambda-c-2r", b_lc2r, "Critical Gilbert intensity at 2r");
    bounds_cmd->add_option("--area-source", area_source)->check(CLI::IsMember({"computed", "published"}));
    bounds_cmd->callback([&] {
        bounds.mu = b_mu;
        bounds.p = b_p;
        bounds.lambda_c_r = b_lcr;
        bounds.lambda_c_2r = b_lc2r;
        bounds.area_source = area_source == "published" ? AreaSource::published : AreaSource::computed;
        print(bound_ledger(bounds));
    });

    CommonFlags sample_flags;
    bool sample_torus = false;
    std::string sample_format = "csv", edges_path, components_path;
    auto* sample_cmd = app.add_subcommand("sample", "Dump a Poisson sample; optionally its AB graph");
    sample_cmd->add_option("--dim", sample_flags.dim)->capture_default_str();
    sample_cmd->add_option("--n", sample_flags.n, "Intensity")->capture_default_str();
    sample_cmd->add_option("--c", sample_flags.c, "Witness ratio for graph dumps")->capture_default_str();
    sample_cmd->add_option("--beta", sample_flags.beta)->capture_default_str();
    sample_cmd->add_option("--r", sample_flags.r);
    sample_cmd->add_option("--window", sample_flags.window, "Box side (ignored with --torus)")->capture_default_str();
    sample_cmd->add_option("--seed", sample_flags.seed)->capture_default_str();
    sample_cmd->add_option("--out", sample_flags.out);
    sample_cmd->add_flag("--torus", sample_torus, "Unit torus instead of [0, window]^d");
    sample_cmd->add_option("--format", sample_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sample_cmd->add_option("--edges", edges_path, "Write the AB graph edge list (CSV)");
    sample_cmd->add_option("--components", components_path, "Write the AB graph component summary (JSON)");
    sample_cmd->callback([&] {
        const Window w = sample_torus ? Window::torus(sample_flags.dim) : Window::box(sample_flags.dim, 0.0, sample_flags.window);
        const auto ps = sample_poisson(w, sample_flags.n, derive_seed(sample_flags.seed, 0), "P1");
        std::ofstream file;
        if (!sample_flags.out.empty()) file.open(sample_flags.out);
        std::ostream& os = sample_flags.out.empty() ? std::cout : file;
        if (sample_format == "csv")
            write_csv(os, ps);
        else
            os << to_json(ps).dump(2) << "\n";
        if (edges_path.empty() && components_path.empty()) return;
        const auto witnesses = sample_poisson(w, sample_flags.c * sample_flags.n, derive_seed(sample_flags.seed, 1), "P2");
        const double r = sample_flags.r ? *sample_flags.r
                                        : cutoff_radius(sample_flags.n * w.volume(), sample_flags.c, sample_flags.beta, sample_flags.dim);
        const auto g = build_ab_rgg(ps, witnesses, r, w.metric());
        if (!edges_path.empty()) {
            std::ofstream e(edges_path);
            write_edges_csv(e, g.edges());
        }
        if (!components_path.empty()) std::ofstream(components_path) << component_summary(g.component_labels()).dump(2) << "\n";
    });

    CommonFlags iso_flags, mn_flags, conn_flags, perc_flags, lat_flags, word_flags;
    double conn_tol = 1e-3, lat_p = 0.5;
    std::size_t lat_size = 64, prefix = 20;
    auto* iso_cmd = app.add_subcommand("isolated", "Isolated-node counts W, auxiliary counts and M_n");
    add_common(iso_cmd, iso_flags);
    iso_cmd->callback([&] { run(make_config(ExperimentKind::isolated, iso_flags), iso_flags); });

    auto* mn_cmd = app.add_subcommand("mn", "Largest nearest-neighbour radius M_n");
    add_common(mn_cmd, mn_flags);
    mn_cmd->callback([&] { run(make_config(ExperimentKind::mn, mn_flags), mn_flags); });

    auto* conn_cmd = app.add_subcommand("connectivity", "Connectivity threshold alpha*_n(c)");
    add_common(conn_cmd, conn_flags);
    conn_cmd->add_option("--tol", conn_tol)->capture_default_str();
    conn_cmd->callback([&] {
        auto cfg = make_config(ExperimentKind::connectivity, conn_flags);
        cfg.tol = conn_tol;
        run(cfg, conn_flags);
    });

    auto* perc_cmd = app.add_subcommand("percolation", "Box crossings of the continuum AB model");
    add_common(perc_cmd, perc_flags);
    perc_cmd->callback([&] { run(make_config(ExperimentKind::percolation, perc_flags), perc_flags); });

    auto* lat_cmd = app.add_subcommand("lattice", "Site percolation crossings (triangular for d = 2, Z*^d otherwise)");
    add_common(lat_cmd, lat_flags);
    lat_cmd->add_option("--p", lat_p)->capture_default_str();
    lat_cmd->add_option("--size", lat_size)->capture_default_str();
    lat_cmd->callback([&] {
        auto cfg = make_config(ExperimentKind::lattice, lat_flags);
        cfg.p = lat_p;
        cfg.lattice_size = lat_size;
        run(cfg, lat_flags);
    });

    auto* word_cmd = app.add_subcommand("word", "Alternating word occurrence in [0, window]^d");
    add_common(word_cmd, word_flags);
    word_cmd->add_option("--prefix", prefix)->capture_default_str();
    word_cmd->callback([&] {
        auto cfg = make_config(ExperimentKind::word, word_flags);
        cfg.prefix = prefix;
        run(cfg, word_flags);
    });

    CommonFlags sweep_flags;
    double mu_min = 0.0, mu_max = 10.0, target = 0.5, sweep_tol = 0.01;
    std::size_t steps = 11;
    bool estimate = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "Coupled crossing frequency over a mu grid");
    add_common(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--mu-min", mu_min)->capture_default_str();
    sweep_cmd->add_option("--mu-max", mu_max)->capture_default_str();
    sweep_cmd->add_option("--steps", steps)->capture_default_str();
    sweep_cmd->add_flag("--estimate", estimate, "Also print the mu at which the frequency reaches --target");
    sweep_cmd->add_option("--target", target)->capture_default_str();
    sweep_cmd->add_option("--tol", sweep_tol)->capture_default_str();
    sweep_cmd->callback([&] {
        const double r = sweep_flags.r.value_or(1.0);
        std::vector<double> mus;
        for (std::size_t i = 0; i < steps; ++i)
            mus.push_back(steps == 1 ? mu_min : mu_min + (mu_max - mu_min) * static_cast<double>(i) / static_cast<double>(steps - 1));
        const auto exec = sweep_flags.parallel > 1 ? Execution::parallel : Execution::serial;
        const auto theta = sweep_theta(sweep_flags.lambda, mus, r, sweep_flags.window, sweep_flags.reps,
                                       sweep_flags.seed, sweep_flags.dim, exec);
        std::ofstream file;
        if (!sweep_flags.out.empty()) file.open(sweep_flags.out);
        std::ostream& os = sweep_flags.out.empty() ? std::cout : file;
        const bool csv = sweep_flags.format == "csv";
        if (csv) os << "lambda,mu,r,window,crossed,trials,theta,lo,hi\n";
        for (std::size_t i = 0; i < mus.size(); ++i) {
            const auto& t = theta[i];
            if (csv) {
                os << sweep_flags.lambda << "," << mus[i] << "," << r << "," << sweep_flags.window << "," << t.successes
                   << "," << t.trials << "," << t.p << "," << t.lo << "," << t.hi << "\n";
            } else {
                os << ojson{{"lambda", sweep_flags.lambda}, {"mu", mus[i]}, {"r", r}, {"window", sweep_flags.window},
                            {"crossed", t.successes}, {"trials", t.trials}, {"theta", t.p}, {"lo", t.lo}, {"hi", t.hi}}
                          .dump()
                   << "\n";
            }
        }
        if (estimate) {
            const auto est = estimate_mu_c(sweep_flags.lambda, r, sweep_flags.window, target, sweep_tol, sweep_flags.reps,
                                           sweep_flags.seed, mu_max, sweep_flags.dim, exec);
            std::cerr << ojson{{"detected", est.detected}, {"mu_hat", number(est.mu_hat)}, {"mu_lo", number(est.mu_lo)},
                               {"mu_hi", number(est.mu_hi)}, {"theta_at_mu_hat", est.at_mu_hat.p}}
                             .dump()
                      << "\n";
        }
    });

    std::string summary_in;
    double summary_beta = 1.0;
    auto* sum_cmd = app.add_subcommand("summarize", "Summary statistics of a JSONL record stream");
    sum_cmd->add_option("--in", summary_in, "JSONL file (stdin when omitted)");
    sum_cmd->add_option("--beta", summary_beta, "Poisson mean for the total-variation distance")->capture_default_str();
    sum_cmd->callback([&] {
        std::vector<TrialRecord> recs;
        if (summary_in.empty()) {
            recs = read_records(std::cin);
        } else {
            std::ifstream in(summary_in);
            if (!in) throw std::runtime_error("cannot open " + summary_in);
            recs = read_records(in);
        }
        print(summarize(std::move(recs), summary_beta));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "abperc: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
