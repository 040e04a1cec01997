#pragma once

#include "cohest/stabilizers.hpp"
#include "cohest/states.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cohest {

// Sample mean of a +-1 observable with its standard error. shots == 0 marks
// an analytic (exact) record.
struct ExpectationRecord {
    std::string op;
    double mean = 0.0;
    double sigma = 0.0;
    std::uint64_t shots = 0;

    friend bool operator==(const ExpectationRecord&, const ExpectationRecord&) = default;
};

// Samples the observable's +-1 outcome `shots` times. Deterministic in seed.
ExpectationRecord simulate_record(const DensityMatrix& rho, const PauliString& p, std::uint64_t shots,
                                  std::uint64_t seed);

// Exact (sigma = 0, shots = 0) record.
ExpectationRecord exact_record(const DensityMatrix& rho, const PauliString& p);

// One record per label; each label draws from its own stream derived from
// (seed, label), so records do not depend on which other labels are present.
std::vector<ExpectationRecord> simulate_records(const DensityMatrix& rho, const StabilizerGroup& group,
                                                std::span<const std::size_t> labels, std::uint64_t shots,
                                                std::uint64_t seed);
std::vector<ExpectationRecord> exact_records(const DensityMatrix& rho, const StabilizerGroup& group,
                                             std::span<const std::size_t> labels);

// CSV with header "operator,mean,sigma,shots".
std::vector<ExpectationRecord> read_records(std::istream& in);
std::vector<ExpectationRecord> ingest_csv(const std::filesystem::path& path);
// Same, and checks every operator belongs to `group` up to sign.
std::vector<ExpectationRecord> ingest_csv(const std::filesystem::path& path, const StabilizerGroup& group);
void write_records(std::ostream& out, std::span<const ExpectationRecord> records);

// X = { p >= 0 : lower <= rows . p <= upper }. Row 0 is the identity row
// pinned to 1, which together with p >= 0 makes X a subset of the simplex.
struct ConstraintSet {
    std::size_t dim = 0;
    std::vector<std::vector<double>> rows;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::string> labels;

    // Only the normalization row.
    static ConstraintSet simplex(std::size_t dim);

    std::size_t size() const { return rows.size(); }
    void add_row(std::vector<double> row, double lo, double hi, std::string label = {});
    bool contains(std::span<const double> p, double tolerance = 1e-9) const;
};

// Rows for the labels in `subset` (identity label 0 is implied) with bounds
// mean +- w sigma clipped to [-1, 1]. A record whose operator is the negation
// of the group element contributes the negated character row.
ConstraintSet build_constraints(std::span<const ExpectationRecord> records, const StabilizerGroup& group,
                                std::span<const std::size_t> subset, double w);

} // namespace cohest
