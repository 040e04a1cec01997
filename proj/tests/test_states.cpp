#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohest/error.hpp"
#include "cohest/states.hpp"

#include <cmath>

using namespace cohest;

namespace {

// CZ network over |+>^n assembled from explicit gate matrices.
std::vector<complex> graph_state_by_gates(std::size_t n, const std::vector<Edge>& edges) {
    const std::size_t d = std::size_t(1) << n;
    std::vector<complex> v(d, 1.0 / std::sqrt(double(d)));
    for (auto [a, b] : edges) {
        const std::size_t ma = std::size_t(1) << (n - 1 - a);
        const std::size_t mb = std::size_t(1) << (n - 1 - b);
        ComplexMatrix cz = ComplexMatrix::identity(d);
        for (std::size_t j = 0; j < d; ++j) {
            if ((j & ma) && (j & mb)) cz(j, j) = -1.0;
        }
        std::vector<complex> w(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) w[i] += cz(i, j) * v[j];
        v = w;
    }
    return v;
}

} // namespace

TEST_CASE("pure state validation") {
    CHECK_THROWS_AS(PureState(2, {1.0, 0.0}), DimensionMismatch);
    CHECK_THROWS_AS(PureState(1, {1.0, 1.0}), InvalidState);
    CHECK_NOTHROW(PureState(1, {1.0, 0.0}));
}

TEST_CASE("ghz amplitudes") {
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto g = ghz(n);
        CHECK(std::abs(g[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(g[g.dim() - 1] - 1.0 / std::sqrt(2.0)) < 1e-15);
        for (std::size_t i = 1; i + 1 < g.dim(); ++i) CHECK(g[i] == complex(0.0));
    }
    CHECK_THROWS_AS(ghz(1), InvalidState);
}

TEST_CASE("graph states agree with a gate-level construction") {
    for (std::size_t n = 3; n <= 6; ++n) {
        const auto edges = path_edges(n);
        const auto want = graph_state_by_gates(n, edges);
        const auto got = linear_cluster(n);
        for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-14);
    }
    const std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}};
    const auto want = graph_state_by_gates(4, star);
    const auto got = graph_state(4, star);
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-14);
}

TEST_CASE("four-qubit cluster in the product-state expansion") {
    // (|+0+0> + |+0-1> + |-1-0> + |-1+1>) / 2 with qubits 1 and 3 in Z basis.
    const auto c = linear_cluster(4);
    const double s = 1.0 / std::sqrt(2.0);
    auto ket = [&](int a, int b, int cc, int dd) {
        // a, cc in {+1, -1} for |+>, |->; b, dd in {0, 1}
        std::vector<complex> v(16);
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                const double ai = (i == 0 ? s : a * s);
                const double ck = (k == 0 ? s : cc * s);
                v[std::size_t(i * 8 + b * 4 + k * 2 + dd)] += ai * ck;
            }
        return v;
    };
    std::vector<complex> want(16);
    const std::vector<std::vector<complex>> terms{ket(1, 0, 1, 0), ket(1, 0, -1, 1), ket(-1, 1, -1, 0),
                                                  ket(-1, 1, 1, 1)};
    for (const auto& t : terms)
        for (std::size_t i = 0; i < 16; ++i) want[i] += t[i] / 2.0;
    for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(c[i] - want[i]) < 1e-14);
}

TEST_CASE("edge validation") {
    const std::vector<Edge> loop{{1, 1}};
    const std::vector<Edge> outside{{0, 5}};
    const std::vector<Edge> repeated{{0, 1}, {1, 0}};
    CHECK_THROWS_AS(graph_state(3, loop), InvalidEdge);
    CHECK_THROWS_AS(graph_state(3, outside), InvalidEdge);
    CHECK_THROWS_AS(graph_state(3, repeated), InvalidEdge);
    CHECK_THROWS_AS(linear_cluster(2), InvalidState);
}

TEST_CASE("density matrix validation") {
    ComplexMatrix bad_trace = ComplexMatrix::identity(2);
    CHECK_THROWS_AS(DensityMatrix(1, bad_trace), InvalidState);
    ComplexMatrix skew(2, 2, {0.5, 0.1, 0.2, 0.5});
    CHECK_THROWS_AS(DensityMatrix(1, skew), NotHermitian);
    CHECK_THROWS_AS(DensityMatrix(2, ComplexMatrix::identity(2)), DimensionMismatch);
    ComplexMatrix negative(2, 2, {1.5, 0.0, 0.0, -0.5});
    const DensityMatrix rho(1, negative);
    CHECK_FALSE(rho.is_positive());
    CHECK(DensityMatrix(ghz(3)).is_positive());
}

TEST_CASE("depolarizing channel") {
    const auto psi = ghz(3);
    const auto rho = depolarize(psi, 0.25);
    CHECK(rho(0, 0).real() == doctest::Approx(0.75 * 0.5 + 0.25 / 8));
    CHECK(rho(0, 7).real() == doctest::Approx(0.375));
    CHECK(rho(1, 1).real() == doctest::Approx(0.25 / 8));
    CHECK(rho.is_positive());
    CHECK_THROWS_AS(depolarize(psi, -0.1), EtaOutOfRange);
    CHECK_THROWS_AS(depolarize(psi, 1.5), EtaOutOfRange);
    const auto mixed = depolarize(psi, 1.0);
    CHECK(mixed(0, 7) == complex(0.0));
}

TEST_CASE("diagonal distributions") {
    const auto d = diagonal(linear_cluster(3));
    for (double p : d.probs) CHECK(p == doctest::Approx(1.0 / 8));
    const auto g = diagonal(DensityMatrix(ghz(2)));
    CHECK(g.probs[0] == doctest::Approx(0.5));
    CHECK(g.probs[1] == doctest::Approx(0.0));
}

TEST_CASE("entropies") {
    const std::vector<double> uniform(16, 1.0 / 16);
    CHECK(von_neumann_entropy(uniform) == doctest::Approx(4.0));
    CHECK(linear_entropy(uniform) == doctest::Approx(15.0 / 16));
    const std::vector<double> point{1.0, 0.0, 0.0};
    const auto e = entropies(point);
    CHECK(e.von_neumann == 0.0);
    CHECK(e.linear == doctest::Approx(0.0));
    const std::vector<double> half{0.5, 0.5};
    CHECK(von_neumann_entropy(half) == doctest::Approx(1.0));
}
