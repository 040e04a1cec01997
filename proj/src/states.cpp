#include "cohest/states.hpp"

#include "cohest/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace cohest {

namespace {

std::size_t checked_dim(std::size_t n) {
    if (n == 0 || n > 20) throw InvalidState("qubit count must be in [1, 20], got " + std::to_string(n));
    return std::size_t{1} << n;
}

} // namespace

PureState::PureState(std::size_t n, std::vector<complex> amplitudes)
    : n_(n), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != checked_dim(n)) {
        throw DimensionMismatch("amplitude vector length does not equal 2^n");
    }
    double norm = 0.0;
    for (const auto& a : amplitudes_) norm += std::norm(a);
    if (std::abs(norm - 1.0) > 1e-10) throw InvalidState("state vector is not normalized");
}

ComplexMatrix PureState::projector() const { return ComplexMatrix::outer(amplitudes_); }

DensityMatrix::DensityMatrix(std::size_t n, ComplexMatrix matrix) : n_(n), matrix_(std::move(matrix)) {
    if (matrix_.rows() != checked_dim(n) || !matrix_.is_square()) {
        throw DimensionMismatch("density matrix must be 2^n x 2^n");
    }
    if (!matrix_.is_hermitian()) throw NotHermitian("density matrix is not Hermitian");
    if (std::abs(matrix_.trace() - complex{1.0}) > tol::trace) {
        throw InvalidState("density matrix does not have unit trace");
    }
}

DensityMatrix::DensityMatrix(const PureState& psi) : DensityMatrix(psi.qubits(), psi.projector()) {}

bool DensityMatrix::is_positive() const {
    const auto spectrum = hermitian_eigenvalues(matrix_);
    return spectrum.values.back() >= -tol::negative_eigenvalue;
}

DiagonalDistribution diagonal(const DensityMatrix& rho) {
    DiagonalDistribution out;
    out.probs.resize(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) out.probs[i] = std::max(0.0, rho(i, i).real());
    return out;
}

DiagonalDistribution diagonal(const PureState& psi) {
    DiagonalDistribution out;
    out.probs.reserve(psi.dim());
    for (const auto& a : psi.amplitudes()) out.probs.push_back(std::norm(a));
    return out;
}

PureState ghz(std::size_t n) {
    if (n < 2) throw InvalidState("GHZ state needs at least 2 qubits");
    const std::size_t d = checked_dim(n);
    std::vector<complex> amps(d);
    amps.front() = M_SQRT1_2;
    amps.back() = M_SQRT1_2;
    return PureState(n, std::move(amps));
}

PureState maximally_coherent(std::size_t n) {
    const std::size_t d = checked_dim(n);
    return PureState(n, std::vector<complex>(d, 1.0 / std::sqrt(double(d))));
}

void validate_edges(std::size_t n, std::span<const Edge> edges) {
    std::set<Edge> seen;
    for (auto [i, j] : edges) {
        if (i >= n || j >= n) throw InvalidEdge("edge references a qubit outside [0, n)");
        if (i == j) throw InvalidEdge("self-loop on qubit " + std::to_string(i));
        const Edge key{std::min(i, j), std::max(i, j)};
        if (!seen.insert(key).second) {
            throw InvalidEdge("repeated edge (" + std::to_string(key.first) + "," +
                              std::to_string(key.second) + ")");
        }
    }
}

PureState graph_state(std::size_t n, std::span<const Edge> edges) {
    const std::size_t d = checked_dim(n);
    validate_edges(n, edges);
    std::vector<std::pair<std::size_t, std::size_t>> masks;
    for (auto [i, j] : edges) {
        masks.emplace_back(std::size_t{1} << qubit_bit(n, i), std::size_t{1} << qubit_bit(n, j));
    }

    const double magnitude = 1.0 / std::sqrt(double(d));
    std::vector<complex> amps(d);
    for (std::size_t b = 0; b < d; ++b) {
        int parity = 0;
        for (auto [mi, mj] : masks) parity ^= ((b & mi) && (b & mj)) ? 1 : 0;
        amps[b] = parity ? -magnitude : magnitude;
    }
    return PureState(n, std::move(amps));
}

std::vector<Edge> path_edges(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t q = 0; q + 1 < n; ++q) edges.emplace_back(q, q + 1);
    return edges;
}

PureState linear_cluster(std::size_t n) {
    if (n < 3) throw InvalidState("linear cluster state needs at least 3 qubits");
    const auto edges = path_edges(n);
    return graph_state(n, edges);
}

DensityMatrix depolarize(const PureState& psi, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw EtaOutOfRange("noise weight must lie in [0, 1]");
    ComplexMatrix m = psi.projector();
    m *= (1.0 - eta);
    const double floor = eta / double(psi.dim());
    for (std::size_t i = 0; i < psi.dim(); ++i) m(i, i) += floor;
    return DensityMatrix(psi.qubits(), std::move(m));
}

double von_neumann_entropy(std::span<const double> distribution) {
    double s = 0.0;
    for (double p : distribution) {
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

double linear_entropy(std::span<const double> distribution) {
    double sq = 0.0;
    for (double p : distribution) sq += p * p;
    return 1.0 - sq;
}

Entropies entropies(std::span<const double> distribution) {
    return {von_neumann_entropy(distribution), linear_entropy(distribution)};
}

} // namespace cohest
