#include "cohest/measurement.hpp"

#include "cohest/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <random>

namespace cohest {

namespace {

std::mt19937_64 engine_for(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream),
                      std::uint32_t(stream >> 32)};
    return std::mt19937_64(seq);
}

ExpectationRecord sample(double exact, const std::string& op, std::uint64_t shots, std::mt19937_64& rng) {
    if (shots < 2) throw ConfigError("shot simulation needs at least 2 shots");
    const double p_plus = std::clamp((1.0 + exact) / 2.0, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(shots, p_plus);
    const std::uint64_t plus = draw(rng);
    ExpectationRecord r;
    r.op = op;
    r.shots = shots;
    r.mean = (2.0 * double(plus) - double(shots)) / double(shots);
    r.sigma = std::sqrt(std::max(0.0, 1.0 - r.mean * r.mean) / double(shots));
    return r;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(std::string_view s, std::size_t line, const char* field) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError(line, std::string("invalid ") + field + " '" + std::string(s) + "'");
    }
    return v;
}

} // namespace

ExpectationRecord simulate_record(const DensityMatrix& rho, const PauliString& p, std::uint64_t shots,
                                  std::uint64_t seed) {
    auto rng = engine_for(seed, 0);
    return sample(expectation(rho, p), p.to_string(), shots, rng);
}

ExpectationRecord exact_record(const DensityMatrix& rho, const PauliString& p) {
    ExpectationRecord r;
    r.op = p.to_string();
    r.mean = std::clamp(expectation(rho, p), -1.0, 1.0);
    return r;
}

std::vector<ExpectationRecord> simulate_records(const DensityMatrix& rho, const StabilizerGroup& group,
                                                std::span<const std::size_t> labels, std::uint64_t shots,
                                                std::uint64_t seed) {
    std::vector<ExpectationRecord> out;
    for (auto label : labels) {
        const auto& e = group.element(label);
        auto rng = engine_for(seed, label);
        out.push_back(sample(expectation(rho, e), e.to_string(), shots, rng));
    }
    return out;
}

std::vector<ExpectationRecord> exact_records(const DensityMatrix& rho, const StabilizerGroup& group,
                                             std::span<const std::size_t> labels) {
    std::vector<ExpectationRecord> out;
    for (auto label : labels) out.push_back(exact_record(rho, group.element(label)));
    return out;
}

std::vector<ExpectationRecord> read_records(std::istream& in) {
    std::vector<ExpectationRecord> out;
    std::string raw;
    std::size_t line = 0;
    bool header = false;
    while (std::getline(in, raw)) {
        ++line;
        const auto text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        const auto fields = split(text);
        if (!header) {
            if (fields.size() != 4 || fields[0] != "operator" || fields[1] != "mean" || fields[2] != "sigma" ||
                fields[3] != "shots") {
                throw ParseError(line, "expected header 'operator,mean,sigma,shots'");
            }
            header = true;
            continue;
        }
        if (fields.size() != 4) throw ParseError(line, "expected 4 fields, got " + std::to_string(fields.size()));
        if (fields[0].empty()) throw ParseError(line, "empty operator");
        ExpectationRecord r;
        try {
            r.op = PauliString::parse(fields[0]).to_string();
        } catch (const UnknownOperator& e) {
            throw ParseError(line, e.what());
        }
        r.mean = parse_double(fields[1], line, "mean");
        if (r.mean < -1.0 || r.mean > 1.0) throw ParseError(line, "mean outside [-1, 1]");
        r.sigma = parse_double(fields[2], line, "sigma");
        if (r.sigma < 0.0) throw ParseError(line, "negative sigma");
        std::uint64_t shots = 0;
        const auto& s = fields[3];
        const auto res = std::from_chars(s.data(), s.data() + s.size(), shots);
        if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
            throw ParseError(line, "invalid shots '" + std::string(s) + "'");
        }
        r.shots = shots;
        out.push_back(std::move(r));
    }
    if (!header) throw ParseError(0, "missing header");
    return out;
}

std::vector<ExpectationRecord> ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    return read_records(in);
}

std::vector<ExpectationRecord> ingest_csv(const std::filesystem::path& path, const StabilizerGroup& group) {
    auto records = ingest_csv(path);
    for (const auto& r : records) {
        if (!group.find(PauliString::parse(r.op))) {
            throw UnknownOperator("operator " + r.op + " is not in the declared stabilizer group");
        }
    }
    return records;
}

void write_records(std::ostream& out, std::span<const ExpectationRecord> records) {
    out << "operator,mean,sigma,shots\n";
    for (const auto& r : records) {
        out << r.op << ',' << format_double(r.mean) << ',' << format_double(r.sigma) << ',' << r.shots << '\n';
    }
}

ConstraintSet ConstraintSet::simplex(std::size_t dim) {
    ConstraintSet x;
    x.dim = dim;
    x.add_row(std::vector<double>(dim, 1.0), 1.0, 1.0, "identity");
    return x;
}

void ConstraintSet::add_row(std::vector<double> row, double lo, double hi, std::string label) {
    if (row.size() != dim) throw DimensionMismatch("constraint row length differs from dimension");
    if (lo > hi) throw InvalidState("constraint lower bound exceeds upper bound");
    rows.push_back(std::move(row));
    lower.push_back(lo);
    upper.push_back(hi);
    labels.push_back(std::move(label));
}

bool ConstraintSet::contains(std::span<const double> p, double tolerance) const {
    if (p.size() != dim) return false;
    for (double v : p) {
        if (v < -tolerance) return false;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        double s = 0.0;
        for (std::size_t k = 0; k < dim; ++k) s += rows[r][k] * p[k];
        if (s < lower[r] - tolerance || s > upper[r] + tolerance) return false;
    }
    return true;
}

ConstraintSet build_constraints(std::span<const ExpectationRecord> records, const StabilizerGroup& group,
                                std::span<const std::size_t> subset, double w) {
    if (!(w >= 0.0)) throw ConfigError("relaxation width w must be nonnegative");

    struct Resolved {
        std::size_t label;
        int sign;
        const ExpectationRecord* record;
    };
    std::vector<Resolved> resolved;
    for (const auto& r : records) {
        const auto match = group.find(PauliString::parse(r.op));
        if (!match) throw UnknownOperator("operator " + r.op + " is not in the stabilizer group");
        resolved.push_back({match->label, match->relative_sign, &r});
    }

    const auto chars = character_matrix(group);
    ConstraintSet x = ConstraintSet::simplex(group.size());
    for (auto label : subset) {
        if (label >= group.size()) throw UnknownLabel("label " + std::to_string(label) + " is not in the group");
        if (label == 0) continue;
        const auto it = std::find_if(resolved.begin(), resolved.end(),
                                     [&](const Resolved& r) { return r.label == label; });
        if (it == resolved.end()) {
            throw MissingRecord("no record for " + group.element(label).to_string());
        }
        auto row = chars.row(label);
        if (it->sign < 0) {
            for (auto& v : row) v = -v;
        }
        const double m = it->record->mean;
        const double s = it->record->sigma;
        const double lo = std::clamp(m - w * s, -1.0, 1.0);
        const double hi = std::clamp(m + w * s, -1.0, 1.0);
        x.add_row(std::move(row), lo, hi, it->record->op);
    }
    return x;
}

} // namespace cohest
