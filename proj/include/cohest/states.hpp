#pragma once

#include "cohest/tensor.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace cohest {

// Basis index convention: qubit 0 is the most significant bit, so basis state
// |b0 b1 ... b(n-1)> has index sum_q b_q 2^(n-1-q).
inline std::size_t qubit_bit(std::size_t n, std::size_t qubit) { return n - 1 - qubit; }

class PureState {
public:
    PureState(std::size_t n, std::vector<complex> amplitudes);

    std::size_t qubits() const { return n_; }
    std::size_t dim() const { return amplitudes_.size(); }
    std::span<const complex> amplitudes() const { return amplitudes_; }
    const complex& operator[](std::size_t i) const { return amplitudes_[i]; }

    ComplexMatrix projector() const;

private:
    std::size_t n_;
    std::vector<complex> amplitudes_;
};

class DensityMatrix {
public:
    // Checks Hermiticity (1e-10) and unit trace (1e-10). Positivity is checked
    // separately by is_positive() since it needs an eigensolve.
    DensityMatrix(std::size_t n, ComplexMatrix matrix);
    explicit DensityMatrix(const PureState& psi);

    std::size_t qubits() const { return n_; }
    std::size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }
    const complex& operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }

    bool is_positive() const;

private:
    std::size_t n_;
    ComplexMatrix matrix_;
};

// Computational-basis populations.
struct DiagonalDistribution {
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }
};

DiagonalDistribution diagonal(const DensityMatrix& rho);
DiagonalDistribution diagonal(const PureState& psi);

PureState ghz(std::size_t n);
// Uniform superposition over all basis states.
PureState maximally_coherent(std::size_t n);

using Edge = std::pair<std::size_t, std::size_t>;

// Throws InvalidEdge on out-of-range, self-loop or repeated (unordered) edges.
void validate_edges(std::size_t n, std::span<const Edge> edges);

// CZ network over |+>^n. Qubits are 0-based.
PureState graph_state(std::size_t n, std::span<const Edge> edges);
std::vector<Edge> path_edges(std::size_t n);
PureState linear_cluster(std::size_t n);

// (1 - eta) |psi><psi| + eta I / d
DensityMatrix depolarize(const PureState& psi, double eta);

struct Entropies {
    double von_neumann; // bits
    double linear;
};

Entropies entropies(std::span<const double> distribution);
double von_neumann_entropy(std::span<const double> distribution);
double linear_entropy(std::span<const double> distribution);

} // namespace cohest
