#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohest/error.hpp"
#include "cohest/stabilizers.hpp"
#include "support.hpp"

#include <bit>
#include <cmath>

using namespace cohest;

namespace {

ComplexMatrix letter_matrix(char c) {
    const complex i(0.0, 1.0);
    switch (c) {
    case 'X': return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0});
    case 'Y': return ComplexMatrix(2, 2, {0.0, -i, i, 0.0});
    case 'Z': return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0});
    default: return ComplexMatrix::identity(2);
    }
}

// Kronecker product of single-qubit matrices, qubit 0 leftmost.
ComplexMatrix oracle_matrix(const std::string& letters, complex scale = 1.0) {
    ComplexMatrix m = letter_matrix(letters[0]);
    for (std::size_t q = 1; q < letters.size(); ++q) m = kron(m, letter_matrix(letters[q]));
    return scale * m;
}

double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

PauliString random_pauli(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> bits(0, (std::uint64_t(1) << n) - 1);
    std::uniform_int_distribution<int> phase(0, 3);
    return PauliString(n, bits(rng), bits(rng), phase(rng));
}

complex i_power(int k) {
    static const complex table[4] = {1.0, complex(0.0, 1.0), -1.0, complex(0.0, -1.0)};
    return table[((k % 4) + 4) % 4];
}

} // namespace

TEST_CASE("parse and print") {
    CHECK(PauliString::parse("XZIY").to_string() == "XZIY");
    CHECK(PauliString::parse("+XX").to_string() == "XX");
    CHECK(PauliString::parse("-ZZ").to_string() == "-ZZ");
    CHECK(PauliString::parse("-ZZ").sign() == -1);
    CHECK_THROWS_AS(PauliString::parse(""), UnknownOperator);
    CHECK_THROWS_AS(PauliString::parse("XQ"), UnknownOperator);
    CHECK(PauliString::single(3, 1, 'Y').letters() == "IYI");
    CHECK(PauliString::identity(2).is_identity());
}

TEST_CASE("matrices agree with Kronecker products of Pauli matrices") {
    for (const std::string s : {"X", "Y", "Z", "XY", "YZ", "ZXY", "IYI", "YYY"}) {
        CHECK(max_diff(PauliString::parse(s).matrix(), oracle_matrix(s)) < 1e-15);
        CHECK(max_diff(PauliString::parse("-" + s).matrix(), oracle_matrix(s, -1.0)) < 1e-15);
    }
}

TEST_CASE("products, phases and commutation match matrix algebra") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + rep % 3;
        const auto a = random_pauli(n, rng);
        const auto b = random_pauli(n, rng);
        const auto am = oracle_matrix(a.letters(), i_power(a.phase()));
        const auto bm = oracle_matrix(b.letters(), i_power(b.phase()));
        const auto ab = a * b;
        CHECK(max_diff(ab.matrix(), am * bm) < 1e-14);
        const bool commute = max_diff(am * bm, bm * am) < 1e-14;
        CHECK(a.commutes_with(b) == commute);
    }
}

TEST_CASE("action on basis states") {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 50; ++rep) {
        const auto p = random_pauli(3, rng);
        const auto m = p.matrix();
        for (std::size_t j = 0; j < 8; ++j) {
            CHECK(std::abs(m(p.target(j), j) - p.coefficient(j)) < 1e-15);
        }
    }
}

TEST_CASE("expectations match Tr(P rho)") {
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto rho = testing::random_density(n, rng);
        for (int rep = 0; rep < 20; ++rep) {
            auto p = random_pauli(n, rng);
            if (!p.is_hermitian()) p = PauliString(n, p.x_bits(), p.z_bits(), 0);
            const double want = trace_product(p.matrix(), rho.matrix()).real();
            CHECK(expectation(rho, p) == doctest::Approx(want).epsilon(1e-12));
        }
    }
    const auto rho = testing::random_density(2, rng);
    CHECK_THROWS_AS(expectation(rho, PauliString::parse("XXX")), DimensionMismatch);
    CHECK_THROWS_AS(expectation(rho, PauliString(2, 1, 0, 1)), NotHermitian);
}

TEST_CASE("ghz and cluster generators stabilize their states") {
    for (std::size_t n = 3; n <= 6; ++n) {
        const auto ghz_group = expand_group(ghz_generators(n));
        const auto cluster_group = expand_group(graph_generators(n, path_edges(n)));
        CHECK(ghz_group.size() == (std::size_t(1) << n));
        const auto e1 = expectations(DensityMatrix(ghz(n)), ghz_group);
        const auto e2 = expectations(DensityMatrix(linear_cluster(n)), cluster_group);
        for (double v : e1) CHECK(v == doctest::Approx(1.0));
        for (double v : e2) CHECK(v == doctest::Approx(1.0));
    }
    const auto g = ghz_generators(3);
    CHECK(g[0].to_string() == "XXX");
    CHECK(g[1].to_string() == "ZZI");
    CHECK(g[2].to_string() == "IZZ");
    const auto c = graph_generators(3, path_edges(3));
    CHECK(c[0].to_string() == "XZI");
    CHECK(c[1].to_string() == "ZXZ");
    CHECK(c[2].to_string() == "IZX");
}

TEST_CASE("serial and parallel expectation kernels agree exactly") {
    std::mt19937_64 rng(21);
    const auto rho = testing::random_density(5, rng);
    const auto group = expand_group(ghz_generators(5));
    CHECK(expectations(rho, group) == serial::expectations(rho, group));
}

TEST_CASE("group construction checks its generators") {
    using V = std::vector<PauliString>;
    CHECK_THROWS_AS(StabilizerGroup(V{PauliString::parse("XX"), PauliString::parse("ZI")}), NonCommutingGenerators);
    CHECK_THROWS_AS(StabilizerGroup(V{PauliString::parse("XX"), PauliString::parse("XX")}), DependentGenerators);
    CHECK_THROWS_AS(StabilizerGroup(V{PauliString::parse("XX")}), DependentGenerators);
    CHECK_THROWS_AS(StabilizerGroup(V{PauliString::parse("ZZ"), PauliString::parse("-ZZ")}), DependentGenerators);
}

TEST_CASE("element labels and signed lookup") {
    const auto group = expand_group(ghz_generators(3));
    CHECK(group.element(0).is_identity());
    CHECK(group.element(1).to_string() == "XXX");
    CHECK(group.element(6).to_string() == "ZIZ");
    // XXX * ZZI = -YYX
    CHECK(group.element(3).to_string() == "-YYX");
    const auto m = group.find(PauliString::parse("YYX"));
    REQUIRE(m);
    CHECK(m->label == 3);
    CHECK(m->relative_sign == -1);
    CHECK_FALSE(group.find(PauliString::parse("XII")));
    CHECK(group.generator_labels() == std::vector<std::size_t>{1, 2, 4});
    CHECK(group.non_identity_labels().size() == 7);
}

TEST_CASE("character matrix is a Hadamard matrix") {
    const CharacterMatrix b(16);
    for (std::size_t a = 0; a < 16; ++a)
        for (std::size_t c = 0; c < 16; ++c) {
            int s = 0;
            for (std::size_t k = 0; k < 16; ++k) s += b(a, k) * b(c, k);
            CHECK(s == (a == c ? 16 : 0));
        }
    CHECK(b(3, 1) == -1);
    CHECK(b(3, 3) == 1);
}

TEST_CASE("destabilizers anticommute with exactly one generator") {
    for (std::size_t n = 2; n <= 6; ++n) {
        for (const auto& gens : {ghz_generators(n), graph_generators(n, path_edges(n))}) {
            const auto e = destabilizers(gens);
            REQUIRE(e.size() == n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) CHECK(e[i].commutes_with(gens[j]) == (i != j));
        }
    }
}

TEST_CASE("graph basis is an orthonormal joint eigenbasis") {
    for (std::size_t n : {3u, 4u}) {
        const auto group = expand_group(ghz_generators(n));
        const GraphBasis basis(group, ghz(n));
        const std::size_t d = basis.dim();
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) {
                complex ip = 0.0;
                for (std::size_t i = 0; i < d; ++i) ip += std::conj(basis.vector(a)[i]) * basis.vector(b)[i];
                CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-12);
            }
            // element label g acts on psi_k with eigenvalue (-1)^{popcount(g & k)}
            for (std::size_t g = 0; g < d; ++g) {
                const auto v = group.element(g).apply(basis.vector(a));
                const double sign = (std::popcount(g & a) % 2) ? -1.0 : 1.0;
                for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(v[i] - sign * basis.vector(a)[i]) < 1e-12);
            }
        }
    }
    const auto group = expand_group(ghz_generators(3));
    CHECK_THROWS_AS(GraphBasis(group, linear_cluster(3)), InvalidState);
}

TEST_CASE("graph-basis probabilities follow from expectations") {
    std::mt19937_64 rng(17);
    const auto group = expand_group(graph_generators(3, path_edges(3)));
    const GraphBasis basis(group, linear_cluster(3));
    const auto rho = testing::random_density(3, rng);
    const auto p = graph_basis_probabilities(rho, basis);
    const auto e = expectations(rho, group);
    const CharacterMatrix b(8);
    double total = 0.0;
    for (std::size_t k = 0; k < 8; ++k) {
        double want = 0.0;
        for (std::size_t a = 0; a < 8; ++a) want += b(a, k) * e[a] / 8.0;
        CHECK(p[k] == doctest::Approx(want).epsilon(1e-12));
        total += p[k];
    }
    CHECK(total == doctest::Approx(1.0));

    const auto noisy = depolarize(ghz(4), 0.3);
    const auto g4 = expand_group(ghz_generators(4));
    const auto q = graph_basis_probabilities(noisy, GraphBasis(g4, ghz(4)));
    CHECK(q[0] == doctest::Approx(0.7 + 0.3 / 16));
    for (std::size_t k = 1; k < 16; ++k) CHECK(q[k] == doctest::Approx(0.3 / 16));
}
