#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohest/error.hpp"
#include "cohest/measurement.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cohest;

namespace {

std::size_t parse_error_line(const std::string& text) {
    std::istringstream in(text);
    try {
        read_records(in);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST_CASE("records round-trip through CSV") {
    const std::vector<ExpectationRecord> recs{{"XXX", 0.98, 0.002, 10000}, {"-YYX", -0.1234567890123, 0.01, 500},
                                              {"III", 1.0, 0.0, 0}};
    std::stringstream s;
    write_records(s, recs);
    const auto back = read_records(s);
    CHECK(back == recs);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(parse_error_line("op,mean,sigma,shots\n") == 1);
    CHECK(parse_error_line("operator,mean,sigma,shots\nXX,0.5,0.1,100\n,0.5,0.1,100\n") == 3);
    CHECK(parse_error_line("operator,mean,sigma,shots\nXQ,0.5,0.1,100\n") == 2);
    CHECK(parse_error_line("operator,mean,sigma,shots\nXX,1.5,0.1,100\n") == 2);
    CHECK(parse_error_line("operator,mean,sigma,shots\nXX,0.5,-0.1,100\n") == 2);
    CHECK(parse_error_line("operator,mean,sigma,shots\n# note\n\nXX,0.5,0.1,ten\n") == 4);
    CHECK(parse_error_line("operator,mean,sigma,shots\nXX,0.5,0.1\n") == 2);
    CHECK(parse_error_line("operator,mean,sigma,shots\nXX,abc,0.1,10\n") == 2);
    std::istringstream ok("# comment\noperator,mean,sigma,shots\n\nZZ,0.25,0.01,100\n");
    CHECK(read_records(ok).size() == 1);
}

TEST_CASE("ingest checks group membership") {
    const auto dir = std::filesystem::temp_directory_path() / "cohest_measurement_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "records.csv";
    {
        std::ofstream out(path);
        out << "operator,mean,sigma,shots\nXXX,1,0,100\nXII,0,0.1,100\n";
    }
    const auto group = expand_group(ghz_generators(3));
    CHECK(ingest_csv(path).size() == 2);
    CHECK_THROWS_AS(ingest_csv(path, group), UnknownOperator);
    CHECK_THROWS_AS(ingest_csv(dir / "missing.csv"), ParseError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("simulation is deterministic and per-label") {
    const auto rho = depolarize(ghz(3), 0.2);
    const auto group = expand_group(ghz_generators(3));
    const auto all = group.non_identity_labels();
    const auto a = simulate_records(rho, group, all, 1000, 42);
    const auto b = simulate_records(rho, group, all, 1000, 42);
    CHECK(a == b);
    const std::vector<std::size_t> just3{3};
    CHECK(simulate_records(rho, group, just3, 1000, 42).front() == a[2]);
    const auto c = simulate_records(rho, group, all, 1000, 43);
    CHECK(c != a);
    CHECK_THROWS_AS(simulate_record(rho, group.element(1), 1, 1), ConfigError);
}

TEST_CASE("simulated means are unbiased with the stated standard error") {
    const auto rho = depolarize(ghz(3), 0.3);
    const auto p = PauliString::parse("XXX");
    const double exact = expectation(rho, p);
    CHECK(exact == doctest::Approx(0.7));
    double sum = 0.0, sq = 0.0;
    const int runs = 400;
    for (int s = 0; s < runs; ++s) {
        const auto r = simulate_record(rho, p, 2000, std::uint64_t(s));
        CHECK(r.shots == 2000);
        CHECK(r.sigma == doctest::Approx(std::sqrt((1 - r.mean * r.mean) / 2000)));
        sum += r.mean;
        sq += r.mean * r.mean;
    }
    const double mean = sum / runs;
    const double sd = std::sqrt(sq / runs - mean * mean);
    const double expected_sd = std::sqrt((1 - 0.49) / 2000);
    CHECK(std::abs(mean - 0.7) < 4 * expected_sd / std::sqrt(double(runs)));
    CHECK(sd == doctest::Approx(expected_sd).epsilon(0.15));
}

TEST_CASE("exact records") {
    const auto rho = DensityMatrix(ghz(3));
    const auto r = exact_record(rho, PauliString::parse("ZZI"));
    CHECK(r.mean == doctest::Approx(1.0));
    CHECK(r.sigma == 0.0);
    CHECK(r.shots == 0);
}

TEST_CASE("constraint rows, signs and clipping") {
    const auto group = expand_group(ghz_generators(3));
    const std::vector<ExpectationRecord> recs{
        {"XXX", 0.9, 0.05, 100}, {"ZZI", 0.99, 0.01, 100}, {"YYX", 0.2, 0.1, 100}};
    const std::vector<std::size_t> subset{0, 1, 2, 3};
    const auto x = build_constraints(recs, group, subset, 3.0);
    REQUIRE(x.size() == 4); // normalization + three records; label 0 implied
    CHECK(x.lower[1] == doctest::Approx(0.75));
    CHECK(x.upper[1] == doctest::Approx(1.0)); // clipped from 1.05
    CHECK(x.upper[2] == doctest::Approx(1.0));
    // YYX is the negation of element 3 (-YYX), so its row is negated.
    const CharacterMatrix b(8);
    for (std::size_t k = 0; k < 8; ++k) CHECK(x.rows[3][k] == -b(3, k));
    CHECK(x.lower[3] == doctest::Approx(-0.1));
    CHECK(x.upper[3] == doctest::Approx(0.5));
    CHECK(x.labels[3] == "YYX");
}

TEST_CASE("constraint errors") {
    const auto group = expand_group(ghz_generators(3));
    const std::vector<ExpectationRecord> recs{{"XXX", 0.9, 0.05, 100}};
    const std::vector<std::size_t> missing{2};
    const std::vector<std::size_t> outside{9};
    const std::vector<std::size_t> one{1};
    CHECK_THROWS_AS(build_constraints(recs, group, missing, 3.0), MissingRecord);
    CHECK_THROWS_AS(build_constraints(recs, group, outside, 3.0), UnknownLabel);
    CHECK_THROWS_AS(build_constraints(recs, group, one, -1.0), ConfigError);
    const std::vector<ExpectationRecord> foreign{{"XII", 0.0, 0.1, 100}};
    CHECK_THROWS_AS(build_constraints(foreign, group, one, 3.0), UnknownOperator);
}

TEST_CASE("constraint sets contain the true graph-basis distribution") {
    const auto rho = depolarize(ghz(3), 0.4);
    const auto group = expand_group(ghz_generators(3));
    const auto labels = group.non_identity_labels();
    const auto x = build_constraints(exact_records(rho, group, labels), group, labels, 0.0);
    const auto p = graph_basis_probabilities(rho, GraphBasis(group, ghz(3)));
    CHECK(x.contains(p, 1e-12));
    std::vector<double> other(8, 0.125);
    CHECK_FALSE(x.contains(other, 1e-9));
}
