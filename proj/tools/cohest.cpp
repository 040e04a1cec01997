// Command-line driver for coherence lower-bound estimation.
#include "cohest/error.hpp"
#include "cohest/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace {

enum Exit { ok = 0, failure = 1, config_error = 2, infeasible = 3, parse_error = 4 };

// Writes to --out when given, stdout otherwise.
template <class Fn>
void emit(const std::string& path, Fn&& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw cohest::ConfigError("cannot write " + path);
    write(out);
}

int run(int argc, char** argv) {
    CLI::App app{"Lower bounds on multipartite coherence from stabilizer expectation values"};
    app.require_subcommand(1);
    app.fallthrough();

    // Every flag is kept as text so config-file values and flags share one
    // parser; flags given on the command line override the file.
    std::map<std::string, std::string> flags;
    std::map<std::string, CLI::Option*> options;
    auto flag = [&](const std::string& key, const std::string& help) {
        options[key] = app.add_option("--" + key, flags[key], help);
    };
    flag("family", "ghz or cluster");
    flag("n", "qubit count");
    flag("n-max", "largest qubit count for tightness-scan");
    flag("eta", "depolarizing weight in [0, 1]");
    flag("eta-steps", "noise-scan grid size (eta = i / steps)");
    flag("shots", "shots per setting (0: exact expectations)");
    flag("w", "relaxation width in standard errors (default 3)");
    flag("subsets", "generators, group or search");
    flag("seed", "simulation seed");
    flag("out", "output file (default stdout)");
    flag("format", "csv or json");
    flag("in", "expectation records CSV for estimate");
    flag("diag", "computational-basis populations CSV (index,probability)");
    flag("subset-log", "per-subset outcomes CSV under --subsets search");
    std::string config_path;
    app.add_option("--config", config_path, "flat key = value file");

    auto* tightness = app.add_subcommand("tightness-scan", "pure-state tightness over a range of n");
    auto* noise = app.add_subcommand("noise-scan", "tightness under depolarizing noise at fixed n");
    auto* estimate = app.add_subcommand("estimate", "bounds from ingested expectation records");
    auto* simulate = app.add_subcommand("simulate", "shot-sampled expectation records");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    cohest::RunConfig cfg;
    if (!config_path.empty()) {
        for (const auto& [key, value] : cohest::read_config_file(config_path)) cohest::apply_setting(cfg, key, value);
    }
    for (const auto& [key, opt] : options) {
        if (opt->count() > 0) cohest::apply_setting(cfg, key, flags[key]);
    }
    cfg.validate();

    if (tightness->parsed()) {
        const auto table = cohest::cmd_tightness_scan(cfg);
        emit(cfg.out, [&](std::ostream& o) { table.write(o, cfg.format); });
    } else if (noise->parsed()) {
        const auto table = cohest::cmd_noise_scan(cfg);
        emit(cfg.out, [&](std::ostream& o) { table.write(o, cfg.format); });
    } else if (estimate->parsed()) {
        if (cfg.input.empty()) throw cohest::ConfigError("estimate needs --in");
        const auto group = cohest::family_group(cfg.family, cfg.n);
        const auto records = cohest::ingest_csv(cfg.input, group);
        const auto result = cohest::cmd_estimate(cfg, records);
        emit(cfg.out, [&](std::ostream& o) { result.table.write(o, cfg.format); });
        if (!cfg.subset_log.empty()) {
            emit(cfg.subset_log, [&](std::ostream& o) { cohest::write_subset_log(o, group, result.outcomes); });
        }
    } else if (simulate->parsed()) {
        const auto records = cohest::cmd_simulate(cfg);
        emit(cfg.out, [&](std::ostream& o) { cohest::write_records(o, records); });
    }
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cohest::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return parse_error;
    } catch (const cohest::UnknownOperator& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return parse_error;
    } catch (const cohest::NoFeasibleSolution& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return infeasible;
    } catch (const cohest::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const cohest::EtaOutOfRange& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const cohest::MissingRecord& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    }
}
