#include "cohest/harness.hpp"

#include "cohest/error.hpp"
#include "cohest/majorization.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <tuple>

namespace cohest {

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw ConfigError("invalid value '" + value + "' for " + key);
    }
    return out;
}

std::string subset_name(const StabilizerGroup& group, std::span<const std::size_t> labels) {
    std::string s;
    for (auto l : labels) {
        if (!s.empty()) s += ';';
        s += group.element(l).to_string();
    }
    return s;
}

std::array<std::optional<double>, 7> exact_values(Family f, std::size_t n, double eta) {
    std::array<std::optional<double>, 7> out;
    for (std::size_t i = 0; i < all_measures.size(); ++i) out[i] = family_exact(f, n, eta, all_measures[i]);
    return out;
}

void append_rows(ResultTable& table, Family f, std::size_t n, double eta, const BoundSet& bounds,
                 const std::array<std::optional<double>, 7>& exact, const std::vector<std::string>& subsets,
                 const RunConfig& cfg) {
    const auto reports = make_reports(bounds, exact);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        ResultRow row{f, n, eta, r.measure, r.exact, r.lower_bound, r.ratio, r.surrogate,
                      subsets[i], cfg.w, cfg.shots, cfg.seed};
        table.rows.push_back(std::move(row));
    }
}

} // namespace

std::string_view to_string(SubsetPolicy p) {
    switch (p) {
    case SubsetPolicy::Generators: return "generators";
    case SubsetPolicy::FullGroup: return "group";
    case SubsetPolicy::Search: return "search";
    }
    return "?";
}

Family parse_family(std::string_view s) {
    if (s == "ghz") return Family::NoisyGHZ;
    if (s == "cluster") return Family::NoisyCluster;
    throw ConfigError("unknown family '" + std::string(s) + "' (expected ghz or cluster)");
}

SubsetPolicy parse_subset_policy(std::string_view s) {
    if (s == "generators") return SubsetPolicy::Generators;
    if (s == "group") return SubsetPolicy::FullGroup;
    if (s == "search") return SubsetPolicy::Search;
    throw ConfigError("unknown subset policy '" + std::string(s) + "' (expected generators, group or search)");
}

OutputFormat parse_format(std::string_view s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigError("unknown format '" + std::string(s) + "' (expected csv or json)");
}

void RunConfig::validate() const {
    const std::size_t min_n = family == Family::NoisyGHZ ? 2 : 3;
    if (n < min_n || n > 10) {
        throw ConfigError("n = " + std::to_string(n) + " outside [" + std::to_string(min_n) + ", 10] for " +
                          std::string(to_string(family)));
    }
    if (n_max != 0 && (n_max < n || n_max > 10)) throw ConfigError("n-max must lie in [n, 10]");
    if (!(eta >= 0.0 && eta <= 1.0)) throw EtaOutOfRange("eta must lie in [0, 1]");
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("w must be a nonnegative number");
    if (shots == 1) throw ConfigError("shots must be 0 (exact) or at least 2");
    if (subsets == SubsetPolicy::Search && std::max(n, n_max) > search_max_qubits) {
        throw ConfigError("exhaustive subset search is limited to n <= " + std::to_string(search_max_qubits));
    }
}

std::vector<double> RunConfig::eta_grid() const {
    if (eta_steps == 0) return {eta};
    std::vector<double> grid;
    for (std::size_t i = 0; i < eta_steps; ++i) grid.push_back(double(i) / double(eta_steps));
    return grid;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
        }
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "family") cfg.family = parse_family(value);
    else if (key == "n") cfg.n = parse_number<std::size_t>(key, value);
    else if (key == "n-max") cfg.n_max = parse_number<std::size_t>(key, value);
    else if (key == "eta") cfg.eta = parse_number<double>(key, value);
    else if (key == "eta-steps") cfg.eta_steps = parse_number<std::size_t>(key, value);
    else if (key == "shots") cfg.shots = parse_number<std::uint64_t>(key, value);
    else if (key == "w") cfg.w = parse_number<double>(key, value);
    else if (key == "subsets") cfg.subsets = parse_subset_policy(value);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "out") cfg.out = value;
    else if (key == "format") cfg.format = parse_format(value);
    else if (key == "in") cfg.input = value;
    else if (key == "diag") cfg.diag = value;
    else if (key == "subset-log") cfg.subset_log = value;
    else throw ConfigError("unknown config key '" + key + "'");
}

PureState family_state(Family f, std::size_t n) {
    return f == Family::NoisyGHZ ? ghz(n) : linear_cluster(n);
}

StabilizerGroup family_group(Family f, std::size_t n) {
    if (f == Family::NoisyGHZ) return expand_group(ghz_generators(n));
    const auto edges = path_edges(n);
    return expand_group(graph_generators(n, edges));
}

std::vector<std::size_t> policy_labels(const StabilizerGroup& group, SubsetPolicy policy) {
    return policy == SubsetPolicy::Generators ? group.generator_labels() : group.non_identity_labels();
}

void ResultTable::sort() {
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.n, a.eta, a.measure, a.subset) < std::tie(b.n, b.eta, b.measure, b.subset);
    });
}

void ResultTable::write_csv(std::ostream& out) const {
    out << "family,n,eta,measure,exact,lower,ratio,subset,w,shots,seed\n";
    for (const auto& r : rows) {
        out << to_string(r.family) << ',' << r.n << ',' << format_double(r.eta) << ',' << to_string(r.measure)
            << ',' << (r.exact ? format_double(*r.exact) : "") << ',' << format_double(r.lower) << ','
            << (r.ratio ? format_double(*r.ratio) : "") << ',' << r.subset << ',' << format_double(r.w) << ','
            << r.shots << ',' << r.seed << '\n';
    }
}

void ResultTable::write_json(std::ostream& out) const {
    auto rows_json = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j;
        j["family"] = to_string(r.family);
        j["n"] = r.n;
        j["eta"] = r.eta;
        j["measure"] = to_string(r.measure);
        j["exact"] = r.exact ? nlohmann::json(*r.exact) : nlohmann::json(nullptr);
        j["lower"] = r.lower;
        j["ratio"] = r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json(nullptr);
        j["subset"] = r.subset;
        j["w"] = r.w;
        j["shots"] = r.shots;
        j["seed"] = r.seed;
        j["surrogate"] = r.surrogate;
        rows_json.push_back(std::move(j));
    }
    out << rows_json.dump(2) << '\n';
}

void ResultTable::write(std::ostream& out, OutputFormat format) const {
    if (format == OutputFormat::Json) write_json(out);
    else write_csv(out);
}

BoundSet bounds_from_records(std::span<const ExpectationRecord> records, const StabilizerGroup& group,
                             std::span<const std::size_t> labels, double w, const DiagonalDistribution& diag) {
    const auto x = build_constraints(records, group, labels, w);
    return spectrum_bounds(diag, meet_over_polytope(x));
}

std::vector<ExpectationRecord> family_records(const DensityMatrix& rho, const StabilizerGroup& group,
                                              std::span<const std::size_t> labels, std::uint64_t shots,
                                              std::uint64_t seed) {
    if (shots == 0) return exact_records(rho, group, labels);
    return simulate_records(rho, group, labels, shots, seed);
}

namespace {

ResultTable scan(const RunConfig& cfg, const std::vector<std::size_t>& ns, const std::vector<double>& etas) {
    if (cfg.subsets == SubsetPolicy::Search) throw ConfigError("scans take the generators or group policy");
    ResultTable table;
    const std::string subset(to_string(cfg.subsets));
    for (auto n : ns) {
        const auto psi = family_state(cfg.family, n);
        const auto group = family_group(cfg.family, n);
        const auto labels = policy_labels(group, cfg.subsets);
        for (double eta : etas) {
            const auto rho = eta == 0.0 ? DensityMatrix(psi) : depolarize(psi, eta);
            const auto records = family_records(rho, group, labels, cfg.shots, cfg.seed);
            const auto bounds = bounds_from_records(records, group, labels, cfg.w, diagonal(rho));
            append_rows(table, cfg.family, n, eta, bounds, exact_values(cfg.family, n, eta),
                        std::vector<std::string>(all_measures.size(), subset), cfg);
        }
    }
    table.sort();
    return table;
}

} // namespace

ResultTable cmd_tightness_scan(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.shots != 0) throw ConfigError("tightness-scan runs on exact expectations (shots = 0)");
    std::vector<std::size_t> ns;
    for (std::size_t n = cfg.n; n <= std::max(cfg.n, cfg.n_max); ++n) ns.push_back(n);
    return scan(cfg, ns, {0.0});
}

ResultTable cmd_noise_scan(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.n_max != 0 && cfg.n_max != cfg.n) throw ConfigError("noise-scan runs at a single n");
    return scan(cfg, {cfg.n}, cfg.eta_grid());
}

namespace {

SubsetOutcome evaluate_subset(std::span<const ExpectationRecord> records, const StabilizerGroup& group,
                              std::span<const std::size_t> all, std::uint64_t mask, double w,
                              const DiagonalDistribution& diag) {
    SubsetOutcome o;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (mask >> i & 1u) o.labels.push_back(all[i]);
    }
    try {
        o.bounds = bounds_from_records(records, group, o.labels, w, diag);
        o.feasible = true;
    } catch (const NoFeasibleSolution&) {
        o.feasible = false;
    }
    return o;
}

std::vector<std::size_t> search_labels(const StabilizerGroup& group) {
    const auto all = group.non_identity_labels();
    if (all.size() > (std::size_t(1) << search_max_qubits) - 1) {
        throw ConfigError("exhaustive subset search is limited to n <= " + std::to_string(search_max_qubits));
    }
    return all;
}

} // namespace

std::vector<SubsetOutcome> search_subsets(std::span<const ExpectationRecord> records, const StabilizerGroup& group,
                                          double w, const DiagonalDistribution& diag) {
    const auto all = search_labels(group);
    const std::uint64_t count = (std::uint64_t(1) << all.size()) - 1;
    std::vector<SubsetOutcome> out(count);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::uint64_t mask = 1; mask <= count; ++mask) {
        try {
            out[mask - 1] = evaluate_subset(records, group, all, mask, w, diag);
        } catch (...) {
#pragma omp critical(cohest_search_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

namespace serial {

std::vector<SubsetOutcome> search_subsets(std::span<const ExpectationRecord> records, const StabilizerGroup& group,
                                          double w, const DiagonalDistribution& diag) {
    const auto all = search_labels(group);
    const std::uint64_t count = (std::uint64_t(1) << all.size()) - 1;
    std::vector<SubsetOutcome> out;
    out.reserve(count);
    for (std::uint64_t mask = 1; mask <= count; ++mask) {
        out.push_back(evaluate_subset(records, group, all, mask, w, diag));
    }
    return out;
}

} // namespace serial

DiagonalDistribution read_diagonal(const std::filesystem::path& path, std::size_t dim) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    DiagonalDistribution diag{std::vector<double>(dim, 0.0)};
    std::string raw;
    std::size_t line = 0;
    bool first = true;
    while (std::getline(in, raw)) {
        ++line;
        const auto text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        const auto comma = text.find(',');
        if (comma == std::string::npos) throw ParseError(line, "expected 'index,probability'");
        const auto a = trim(text.substr(0, comma));
        const auto b = trim(text.substr(comma + 1));
        if (first && a == "index") {
            first = false;
            continue;
        }
        first = false;
        std::size_t index = 0;
        double p = 0.0;
        const auto ra = std::from_chars(a.data(), a.data() + a.size(), index);
        const auto rb = std::from_chars(b.data(), b.data() + b.size(), p);
        if (a.empty() || ra.ec != std::errc() || ra.ptr != a.data() + a.size()) {
            throw ParseError(line, "invalid index '" + a + "'");
        }
        if (b.empty() || rb.ec != std::errc() || rb.ptr != b.data() + b.size() || !(p >= 0.0)) {
            throw ParseError(line, "invalid probability '" + b + "'");
        }
        if (index >= dim) throw ParseError(line, "index " + a + " outside the register");
        diag.probs[index] = p;
    }
    double total = 0.0;
    for (double p : diag.probs) total += p;
    if (std::abs(total - 1.0) > 1e-6) throw ParseError(line, "probabilities sum to " + format_double(total));
    for (auto& p : diag.probs) p /= total;
    return diag;
}

EstimateResult cmd_estimate(const RunConfig& cfg, std::span<const ExpectationRecord> records) {
    cfg.validate();
    const auto group = family_group(cfg.family, cfg.n);
    const bool synthetic = cfg.diag.empty();
    const auto diag = synthetic ? diagonal(depolarize(family_state(cfg.family, cfg.n), cfg.eta))
                                : read_diagonal(cfg.diag, group.size());
    std::array<std::optional<double>, 7> exact;
    if (synthetic) exact = exact_values(cfg.family, cfg.n, cfg.eta);

    EstimateResult result;
    if (cfg.subsets != SubsetPolicy::Search) {
        const auto labels = policy_labels(group, cfg.subsets);
        const auto bounds = bounds_from_records(records, group, labels, cfg.w, diag);
        append_rows(result.table, cfg.family, cfg.n, cfg.eta, bounds, exact,
                    std::vector<std::string>(all_measures.size(), std::string(to_string(cfg.subsets))), cfg);
        return result;
    }

    result.outcomes = search_subsets(records, group, cfg.w, diag);
    std::array<double, 7> best{};
    std::vector<std::string> best_subset(all_measures.size());
    std::vector<bool> seen(all_measures.size(), false);
    for (const auto& o : result.outcomes) {
        if (!o.feasible) continue;
        for (std::size_t i = 0; i < all_measures.size(); ++i) {
            const double v = o.bounds[all_measures[i]];
            if (!seen[i] || v > best[i]) {
                best[i] = v;
                best_subset[i] = subset_name(group, o.labels);
                seen[i] = true;
            }
        }
    }
    if (!seen[0]) throw NoFeasibleSolution("every subset of constraints is infeasible");
    const BoundSet maxima{best[0], best[1], best[2], best[3], best[4], best[5], best[6]};
    append_rows(result.table, cfg.family, cfg.n, cfg.eta, maxima, exact, best_subset, cfg);
    return result;
}

std::vector<ExpectationRecord> cmd_simulate(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.shots < 2) throw ConfigError("simulate needs shots >= 2");
    const auto psi = family_state(cfg.family, cfg.n);
    const auto rho = depolarize(psi, cfg.eta);
    const auto group = family_group(cfg.family, cfg.n);
    ExpectationRecord id;
    id.op = group.element(0).to_string();
    id.mean = 1.0;
    id.sigma = 0.0;
    id.shots = cfg.shots;
    std::vector<ExpectationRecord> out{id};
    const auto labels = policy_labels(group, cfg.subsets);
    const auto sampled = simulate_records(rho, group, labels, cfg.shots, cfg.seed);
    out.insert(out.end(), sampled.begin(), sampled.end());
    return out;
}

void write_subset_log(std::ostream& out, const StabilizerGroup& group, std::span<const SubsetOutcome> outcomes) {
    out << "subset,feasible";
    for (auto m : all_measures) out << ',' << to_string(m);
    out << '\n';
    for (const auto& o : outcomes) {
        out << subset_name(group, o.labels) << ',' << (o.feasible ? 1 : 0);
        for (auto m : all_measures) out << ',' << (o.feasible ? format_double(o.bounds[m]) : "");
        out << '\n';
    }
}

} // namespace cohest
