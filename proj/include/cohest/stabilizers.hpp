#pragma once

#include "cohest/states.hpp"
#include "cohest/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cohest {

// Pauli string in symplectic form: the operator i^phase * (letters), where
// letter q is I, X, Z or Y according to bits (x_q, z_q) and Y = i X Z.
// Bit for qubit q is qubit_bit(n, q), matching the basis index convention.
class PauliString {
public:
    PauliString() = default;
    PauliString(std::size_t n, std::uint64_t x, std::uint64_t z, int phase = 0);

    static PauliString identity(std::size_t n) { return PauliString(n, 0, 0); }
    // Accepts e.g. "XZIZ", "-YY", "+XXX".
    static PauliString parse(std::string_view text);
    // Single-qubit letter on qubit q of an n-qubit register.
    static PauliString single(std::size_t n, std::size_t q, char letter);

    std::size_t qubits() const { return n_; }
    std::uint64_t x_bits() const { return x_; }
    std::uint64_t z_bits() const { return z_; }
    // Power of i in front of the letter string, in {0,1,2,3}.
    int phase() const { return phase_; }
    bool is_hermitian() const { return phase_ % 2 == 0; }
    // +1 or -1; only meaningful when is_hermitian().
    int sign() const { return phase_ == 2 ? -1 : 1; }
    bool is_identity() const { return x_ == 0 && z_ == 0; }
    char letter(std::size_t q) const;

    // Letters only, without sign.
    std::string letters() const;
    // "-" prefix for negative sign; throws for non-Hermitian strings.
    std::string to_string() const;

    bool commutes_with(const PauliString& other) const;
    PauliString operator*(const PauliString& other) const;
    PauliString negated() const { return PauliString(n_, x_, z_, (phase_ + 2) % 4); }

    // Action on a computational basis state: P|j> = coefficient(j) |target(j)>.
    std::size_t target(std::size_t j) const { return j ^ x_; }
    complex coefficient(std::size_t j) const;

    ComplexMatrix matrix() const;
    std::vector<complex> apply(std::span<const complex> v) const;

    friend bool operator==(const PauliString&, const PauliString&) = default;

private:
    std::size_t n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    int phase_ = 0;
};

// Group generated by n independent commuting Pauli strings. Element with
// label a is the product of generators j over the set bits j of a.
class StabilizerGroup {
public:
    explicit StabilizerGroup(std::vector<PauliString> generators);

    std::size_t qubits() const { return n_; }
    std::size_t size() const { return elements_.size(); }
    std::span<const PauliString> generators() const { return generators_; }
    std::span<const PauliString> elements() const { return elements_; }
    const PauliString& element(std::size_t label) const { return elements_.at(label); }

    // Label of the element equal to p up to sign, with the relative sign
    // (+1 if p equals the element, -1 if p equals its negation).
    struct Match {
        std::size_t label;
        int relative_sign;
    };
    std::optional<Match> find(const PauliString& p) const;

    // Labels of the generators themselves: 1, 2, 4, ...
    std::vector<std::size_t> generator_labels() const;
    std::vector<std::size_t> non_identity_labels() const;

private:
    std::size_t n_;
    std::vector<PauliString> generators_;
    std::vector<PauliString> elements_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

std::vector<PauliString> ghz_generators(std::size_t n);
// K_q = X_q prod_{j in N(q)} Z_j
std::vector<PauliString> graph_generators(std::size_t n, std::span<const Edge> edges);

StabilizerGroup expand_group(std::vector<PauliString> generators);

// Tr(P rho) in O(d). Throws DimensionMismatch on qubit count mismatch and
// NotHermitian for strings with an imaginary phase.
double expectation(const DensityMatrix& rho, const PauliString& p);

// Expectations of every group element, indexed by label.
std::vector<double> expectations(const DensityMatrix& rho, const StabilizerGroup& group);

namespace serial {
std::vector<double> expectations(const DensityMatrix& rho, const StabilizerGroup& group);
} // namespace serial

// B[a][k] = (-1)^{popcount(a & k)}: eigenvalue of element a on graph-basis
// state k.
class CharacterMatrix {
public:
    explicit CharacterMatrix(std::size_t dim);

    std::size_t dim() const { return dim_; }
    int operator()(std::size_t a, std::size_t k) const;
    std::vector<double> row(std::size_t a) const;

private:
    std::size_t dim_;
};

CharacterMatrix character_matrix(const StabilizerGroup& group);

// Joint eigenbasis of a stabilizer group: |psi_k> = E^k |root>, where E_j is
// a destabilizer anticommuting with generator j only, so generator j has
// eigenvalue (-1)^{k_j} on |psi_k>. For graph generators E_j = Z_j.
class GraphBasis {
public:
    GraphBasis(const StabilizerGroup& group, const PureState& root);

    std::size_t dim() const { return vectors_.size(); }
    std::span<const PauliString> destabilizers() const { return destabilizers_; }
    std::span<const complex> vector(std::size_t k) const { return vectors_[k]; }

private:
    std::vector<PauliString> destabilizers_;
    std::vector<std::vector<complex>> vectors_;
};

// Paulis E_i with E_i anticommuting with generator i and commuting with all
// others, found by elimination over GF(2).
std::vector<PauliString> destabilizers(std::span<const PauliString> generators);

// p_k = <psi_k|rho|psi_k>
std::vector<double> graph_basis_probabilities(const DensityMatrix& rho, const GraphBasis& basis);

} // namespace cohest
