#pragma once

#include "cohest/coherence.hpp"
#include "cohest/measurement.hpp"
#include "cohest/stabilizers.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cohest {

enum class SubsetPolicy { Generators, FullGroup, Search };
enum class OutputFormat { Csv, Json };

std::string_view to_string(SubsetPolicy p);

Family parse_family(std::string_view s);
SubsetPolicy parse_subset_policy(std::string_view s);
OutputFormat parse_format(std::string_view s);

// Exhaustive search enumerates 2^(2^n - 1) - 1 subsets.
inline constexpr std::size_t search_max_qubits = 4;

struct RunConfig {
    Family family = Family::NoisyGHZ;
    std::size_t n = 3;
    std::size_t n_max = 0; // 0: same as n
    double eta = 0.0;
    std::size_t eta_steps = 0; // > 0: grid i / eta_steps, i = 0..eta_steps-1
    std::uint64_t shots = 0;   // 0: exact expectations
    double w = 3.0;
    SubsetPolicy subsets = SubsetPolicy::FullGroup;
    std::uint64_t seed = 1;
    std::string out;
    OutputFormat format = OutputFormat::Csv;
    std::string input;      // estimate: records CSV
    std::string diag;       // estimate: "index,probability" CSV
    std::string subset_log; // estimate/search: per-subset outcomes

    // Throws ConfigError (or EtaOutOfRange) on inconsistent settings.
    void validate() const;
    std::vector<double> eta_grid() const;
};

// Flat "key = value" file; keys mirror the long CLI flags without dashes.
// Blank lines and '#' comments are ignored. Throws ConfigError.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

PureState family_state(Family f, std::size_t n);
StabilizerGroup family_group(Family f, std::size_t n);
std::vector<std::size_t> policy_labels(const StabilizerGroup& group, SubsetPolicy policy);

struct ResultRow {
    Family family;
    std::size_t n;
    double eta;
    Measure measure;
    std::optional<double> exact;
    double lower = 0.0;
    std::optional<double> ratio;
    bool surrogate = false;
    std::string subset;
    double w = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

struct ResultTable {
    std::vector<ResultRow> rows;

    // Stable order by (n, eta, measure, subset).
    void sort();
    void write_csv(std::ostream& out) const;
    void write_json(std::ostream& out) const;
    void write(std::ostream& out, OutputFormat format) const;
};

// Bounds from records restricted to `labels` at width w.
BoundSet bounds_from_records(std::span<const ExpectationRecord> records, const StabilizerGroup& group,
                             std::span<const std::size_t> labels, double w, const DiagonalDistribution& diag);

// Exact (shots = 0) or simulated records for the synthetic state.
std::vector<ExpectationRecord> family_records(const DensityMatrix& rho, const StabilizerGroup& group,
                                              std::span<const std::size_t> labels, std::uint64_t shots,
                                              std::uint64_t seed);

// Pure states over n..n_max with exact constraints.
ResultTable cmd_tightness_scan(const RunConfig& cfg);
// Depolarized states over the eta grid at fixed n.
ResultTable cmd_noise_scan(const RunConfig& cfg);

struct SubsetOutcome {
    std::vector<std::size_t> labels;
    bool feasible = false;
    BoundSet bounds;
};

struct EstimateResult {
    ResultTable table;
    std::vector<SubsetOutcome> outcomes; // only under SubsetPolicy::Search
};

// Evaluates every nonempty subset of the non-identity labels. Infeasible
// subsets are recorded, not thrown.
std::vector<SubsetOutcome> search_subsets(std::span<const ExpectationRecord> records, const StabilizerGroup& group,
                                          double w, const DiagonalDistribution& diag);

namespace serial {
std::vector<SubsetOutcome> search_subsets(std::span<const ExpectationRecord> records, const StabilizerGroup& group,
                                          double w, const DiagonalDistribution& diag);
}

// Diagonal from the --diag file when given, else from the synthetic state.
// Exact values are populated only in the synthetic case. Throws
// NoFeasibleSolution when every evaluated subset is infeasible.
EstimateResult cmd_estimate(const RunConfig& cfg, std::span<const ExpectationRecord> records);

// Identity row first, then one row per label of the policy (search: the full
// group).
std::vector<ExpectationRecord> cmd_simulate(const RunConfig& cfg);

// "index,probability" rows (header optional); missing indices are 0.
DiagonalDistribution read_diagonal(const std::filesystem::path& path, std::size_t dim);

void write_subset_log(std::ostream& out, const StabilizerGroup& group, std::span<const SubsetOutcome> outcomes);

} // namespace cohest
