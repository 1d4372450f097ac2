#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace abperc {

enum class ExperimentKind { isolated, mn, connectivity, percolation, lattice, word };

const char* to_string(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& name);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::isolated;
    int d = 2;
    double n = 1000.0;     // vertex intensity on the unit torus
    double c = 1.0;        // witness intensity is c·n
    double beta = 1.0;
    std::optional<double> r;  // default: r_n(c, β)
    double lambda = 1.0;
    double mu = 1.0;
    double window = 30.0;  // box side for the continuum models
    double p = 0.5;        // lattice site probability
    std::size_t lattice_size = 64;
    std::size_t prefix = 20;  // word prefix length
    double tol = 1e-3;
    std::size_t reps = 200;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument for missing or out-of-range fields.
    void validate() const;
    /// Fields that determine the records, in a fixed order. reps is left
    /// out so a run can be extended.
    nlohmann::ordered_json canonical() const;
    std::string hash() const;
    /// Witness radius used by the isolation experiments.
    double radius() const;
};

/// One replication. Absent observables serialise as null.
struct TrialRecord {
    std::string config_hash;
    std::uint64_t rep = 0;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> n_points_1, n_points_2;
    std::optional<std::uint64_t> W, W_tilde, W_bar, W_hat, W0;
    std::optional<double> M_n, alpha_star;
    std::optional<bool> crossed;
    std::optional<double> elapsed_ms;

    nlohmann::ordered_json to_json() const;
    static TrialRecord from_json(const nlohmann::json& j);
};

/// Field names in output order.
const std::vector<std::string>& record_fields();
std::string to_jsonl(const TrialRecord& rec);
std::string csv_header();
std::string to_csv(const TrialRecord& rec);

/// Deterministic computation of replication `rep`.
TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t rep, bool timing = false);

enum class Format { jsonl, csv };

struct RunOptions {
    int parallel = 1;  // replications in flight
    bool timing = false;
    Format format = Format::jsonl;
    std::vector<std::uint64_t> skip;  // reps already on disk
};

/// Writes the missing replications in rep order. Records are computed in
/// batches of 4·parallel and flushed after each batch, so an interrupted
/// run leaves a valid prefix. Returns the number written.
std::size_t run_experiment(const ExperimentConfig& cfg, std::ostream& out, const RunOptions& opt = {});

struct ResumeState {
    std::vector<std::uint64_t> present;
    std::size_t valid_bytes = 0;  // length of the intact prefix of the file
};

/// Scans an existing JSONL output. A truncated final line is ignored;
/// records of another configuration raise std::runtime_error.
ResumeState scan_existing(std::istream& in, const std::string& config_hash);

/// Parses JSONL records; blank lines are skipped, malformed lines throw.
std::vector<TrialRecord> read_records(std::istream& in);

/// Order-independent summary: moments, Wilson intervals, the W table and
/// its total-variation distance to Poisson(beta). Throws on mixed
/// configurations or repeated reps.
nlohmann::ordered_json summarize(std::vector<TrialRecord> records, double beta = 1.0);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace abperc
