#include "cohest/stabilizers.hpp"

#include "cohest/error.hpp"

#include <bit>
#include <cmath>

namespace cohest {

namespace {

constexpr std::size_t max_pauli_qubits = 20;

std::uint64_t full_mask(std::size_t n) { return n >= 64 ? ~0ull : ((1ull << n) - 1); }

int popcount(std::uint64_t v) { return std::popcount(v); }

complex i_power(int k) {
    switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

std::uint64_t key_of(const PauliString& p) { return (p.x_bits() << 32) | p.z_bits(); }

} // namespace

PauliString::PauliString(std::size_t n, std::uint64_t x, std::uint64_t z, int phase)
    : n_(n), x_(x), z_(z), phase_(((phase % 4) + 4) % 4) {
    if (n == 0 || n > max_pauli_qubits) throw UnknownOperator("Pauli string length must be in [1, 20]");
    if ((x | z) & ~full_mask(n)) throw UnknownOperator("Pauli bits outside the register");
}

PauliString PauliString::parse(std::string_view text) {
    int phase = 0;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        if (text.front() == '-') phase = 2;
        text.remove_prefix(1);
    }
    if (text.empty()) throw UnknownOperator("empty Pauli string");
    const std::size_t n = text.size();
    if (n > max_pauli_qubits) throw UnknownOperator("Pauli string longer than 20 qubits");
    std::uint64_t x = 0, z = 0;
    for (std::size_t q = 0; q < n; ++q) {
        const std::uint64_t bit = 1ull << qubit_bit(n, q);
        switch (text[q]) {
        case 'I': break;
        case 'X': x |= bit; break;
        case 'Z': z |= bit; break;
        case 'Y': x |= bit; z |= bit; break;
        default:
            throw UnknownOperator("invalid Pauli letter '" + std::string(1, text[q]) + "' in " +
                                  std::string(text));
        }
    }
    return PauliString(n, x, z, phase);
}

PauliString PauliString::single(std::size_t n, std::size_t q, char letter) {
    if (q >= n) throw UnknownOperator("qubit index outside the register");
    const std::uint64_t bit = 1ull << qubit_bit(n, q);
    switch (letter) {
    case 'I': return PauliString(n, 0, 0);
    case 'X': return PauliString(n, bit, 0);
    case 'Z': return PauliString(n, 0, bit);
    case 'Y': return PauliString(n, bit, bit);
    default: throw UnknownOperator("invalid Pauli letter");
    }
}

char PauliString::letter(std::size_t q) const {
    const std::uint64_t bit = 1ull << qubit_bit(n_, q);
    const bool xb = x_ & bit, zb = z_ & bit;
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return 'I';
}

std::string PauliString::letters() const {
    std::string s(n_, 'I');
    for (std::size_t q = 0; q < n_; ++q) s[q] = letter(q);
    return s;
}

std::string PauliString::to_string() const {
    if (!is_hermitian()) throw NotHermitian("Pauli string carries an imaginary phase");
    return (sign() < 0 ? "-" : "") + letters();
}

bool PauliString::commutes_with(const PauliString& other) const {
    return (popcount(x_ & other.z_) + popcount(z_ & other.x_)) % 2 == 0;
}

PauliString PauliString::operator*(const PauliString& other) const {
    if (n_ != other.n_) throw DimensionMismatch("Pauli product of different lengths");
    const std::uint64_t x = x_ ^ other.x_;
    const std::uint64_t z = z_ ^ other.z_;
    const int phase = phase_ + other.phase_ + popcount(x_ & z_) + popcount(other.x_ & other.z_) +
                      2 * popcount(z_ & other.x_) - popcount(x & z);
    return PauliString(n_, x, z, phase);
}

complex PauliString::coefficient(std::size_t j) const {
    int k = phase_ + popcount(x_ & z_);
    if (popcount(z_ & j) % 2) k += 2;
    return i_power(k);
}

ComplexMatrix PauliString::matrix() const {
    const std::size_t d = std::size_t{1} << n_;
    ComplexMatrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) m(target(j), j) = coefficient(j);
    return m;
}

std::vector<complex> PauliString::apply(std::span<const complex> v) const {
    const std::size_t d = std::size_t{1} << n_;
    if (v.size() != d) throw DimensionMismatch("Pauli applied to vector of wrong length");
    std::vector<complex> out(d);
    for (std::size_t j = 0; j < d; ++j) out[target(j)] = coefficient(j) * v[j];
    return out;
}

StabilizerGroup::StabilizerGroup(std::vector<PauliString> generators) : generators_(std::move(generators)) {
    if (generators_.empty()) throw DependentGenerators("empty generator list");
    n_ = generators_.front().qubits();
    if (generators_.size() != n_) {
        throw DependentGenerators("expected " + std::to_string(n_) + " generators, got " +
                                  std::to_string(generators_.size()));
    }
    for (std::size_t i = 0; i < n_; ++i) {
        const auto& g = generators_[i];
        if (g.qubits() != n_) throw DimensionMismatch("generators act on different registers");
        if (!g.is_hermitian()) throw NotHermitian("generator with imaginary phase");
        for (std::size_t j = 0; j < i; ++j) {
            if (!g.commutes_with(generators_[j])) {
                throw NonCommutingGenerators("generators " + std::to_string(j) + " and " +
                                             std::to_string(i) + " anticommute");
            }
        }
    }

    const std::size_t order = std::size_t{1} << n_;
    elements_.reserve(order);
    elements_.push_back(PauliString::identity(n_));
    for (std::size_t label = 1; label < order; ++label) {
        const std::size_t low = std::countr_zero(label);
        elements_.push_back(elements_[label & (label - 1)] * generators_[low]);
    }
    for (std::size_t label = 0; label < order; ++label) {
        const auto& e = elements_[label];
        if (!index_.emplace(key_of(e), label).second) {
            throw DependentGenerators("generator products collide; generators are not independent");
        }
        if (label != 0 && e.is_identity()) throw DependentGenerators("group contains -I");
    }
}

std::optional<StabilizerGroup::Match> StabilizerGroup::find(const PauliString& p) const {
    if (p.qubits() != n_) return std::nullopt;
    const auto it = index_.find(key_of(p));
    if (it == index_.end()) return std::nullopt;
    const int rel = elements_[it->second].phase() == p.phase() ? 1 : -1;
    return Match{it->second, rel};
}

std::vector<std::size_t> StabilizerGroup::generator_labels() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_; ++j) out.push_back(std::size_t{1} << j);
    return out;
}

std::vector<std::size_t> StabilizerGroup::non_identity_labels() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 1; a < elements_.size(); ++a) out.push_back(a);
    return out;
}

std::vector<PauliString> ghz_generators(std::size_t n) {
    if (n < 2) throw InvalidState("GHZ generators need at least 2 qubits");
    std::vector<PauliString> gens;
    gens.push_back(PauliString(n, full_mask(n), 0));
    for (std::size_t q = 0; q + 1 < n; ++q) {
        gens.push_back(PauliString::single(n, q, 'Z') * PauliString::single(n, q + 1, 'Z'));
    }
    return gens;
}

std::vector<PauliString> graph_generators(std::size_t n, std::span<const Edge> edges) {
    validate_edges(n, edges);
    std::vector<PauliString> gens;
    for (std::size_t q = 0; q < n; ++q) gens.push_back(PauliString::single(n, q, 'X'));
    for (auto [i, j] : edges) {
        gens[i] = gens[i] * PauliString::single(n, j, 'Z');
        gens[j] = gens[j] * PauliString::single(n, i, 'Z');
    }
    return gens;
}

StabilizerGroup expand_group(std::vector<PauliString> generators) {
    return StabilizerGroup(std::move(generators));
}

double expectation(const DensityMatrix& rho, const PauliString& p) {
    if (p.qubits() != rho.qubits()) throw DimensionMismatch("Pauli string and state sizes differ");
    if (!p.is_hermitian()) throw NotHermitian("expectation of a non-Hermitian Pauli string");
    // Tr(P rho) = sum_m <m^x| P |m> rho(m, m^x)
    complex t = 0.0;
    for (std::size_t m = 0; m < rho.dim(); ++m) t += p.coefficient(m) * rho(m, p.target(m));
    return t.real();
}

std::vector<double> expectations(const DensityMatrix& rho, const StabilizerGroup& group) {
    if (group.qubits() != rho.qubits()) throw DimensionMismatch("group and state sizes differ");
    std::vector<double> out(group.size());
    const auto elements = group.elements();
#pragma omp parallel for schedule(static) if (group.size() >= 64)
    for (std::size_t a = 0; a < elements.size(); ++a) out[a] = expectation(rho, elements[a]);
    return out;
}

namespace serial {
std::vector<double> expectations(const DensityMatrix& rho, const StabilizerGroup& group) {
    if (group.qubits() != rho.qubits()) throw DimensionMismatch("group and state sizes differ");
    std::vector<double> out;
    out.reserve(group.size());
    for (const auto& e : group.elements()) out.push_back(expectation(rho, e));
    return out;
}
} // namespace serial

CharacterMatrix::CharacterMatrix(std::size_t dim) : dim_(dim) {}

int CharacterMatrix::operator()(std::size_t a, std::size_t k) const {
    return std::popcount(a & k) % 2 ? -1 : 1;
}

std::vector<double> CharacterMatrix::row(std::size_t a) const {
    std::vector<double> r(dim_);
    for (std::size_t k = 0; k < dim_; ++k) r[k] = (*this)(a, k);
    return r;
}

CharacterMatrix character_matrix(const StabilizerGroup& group) { return CharacterMatrix(group.size()); }

std::vector<PauliString> destabilizers(std::span<const PauliString> generators) {
    const std::size_t n = generators.size();
    if (n == 0) return {};
    if (3 * n > 64) throw DependentGenerators("too many generators for GF(2) elimination");
    // Row j encodes E -> x_E . z_j + z_E . x_j; E packed as x bits [0, n), z bits [n, 2n).
    // Bits [2n, 3n) track which original rows were combined.
    std::vector<std::uint64_t> rows(n);
    for (std::size_t j = 0; j < n; ++j) {
        rows[j] = generators[j].z_bits() | (generators[j].x_bits() << n) | (1ull << (2 * n + j));
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < 2 * n && r < n; ++col) {
        const std::uint64_t bit = 1ull << col;
        std::size_t sel = r;
        while (sel < n && !(rows[sel] & bit)) ++sel;
        if (sel == n) continue;
        std::swap(rows[r], rows[sel]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i != r && (rows[i] & bit)) rows[i] ^= rows[r];
        }
        pivots.push_back(col);
        ++r;
    }
    if (r < n) throw DependentGenerators("generators are not independent");

    std::vector<PauliString> out;
    const std::size_t nq = generators.front().qubits();
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t packed = 0;
        for (std::size_t row = 0; row < n; ++row) {
            if (rows[row] & (1ull << (2 * n + i))) packed |= 1ull << pivots[row];
        }
        const std::uint64_t mask = full_mask(n);
        out.emplace_back(nq, packed & mask, (packed >> n) & mask);
    }
    return out;
}

GraphBasis::GraphBasis(const StabilizerGroup& group, const PureState& root) {
    if (group.qubits() != root.qubits()) throw DimensionMismatch("group and root state sizes differ");
    const DensityMatrix rho(root);
    for (const auto& g : group.generators()) {
        if (std::abs(expectation(rho, g) - 1.0) > 1e-9) {
            throw InvalidState("root state is not stabilized by generator " + g.to_string());
        }
    }
    destabilizers_ = cohest::destabilizers(group.generators());
    const std::size_t d = root.dim();
    vectors_.resize(d);
    vectors_[0].assign(root.amplitudes().begin(), root.amplitudes().end());
    for (std::size_t k = 1; k < d; ++k) {
        const std::size_t low = std::countr_zero(k);
        vectors_[k] = destabilizers_[low].apply(vectors_[k & (k - 1)]);
    }
}

std::vector<double> graph_basis_probabilities(const DensityMatrix& rho, const GraphBasis& basis) {
    if (rho.dim() != basis.dim()) throw DimensionMismatch("state and basis dimensions differ");
    const std::size_t d = rho.dim();
    std::vector<double> p(d);
#pragma omp parallel for schedule(static) if (d >= 64)
    for (std::size_t k = 0; k < d; ++k) {
        const auto psi = basis.vector(k);
        complex acc = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            if (psi[i] == complex{}) continue;
            complex row = 0.0;
            for (std::size_t j = 0; j < d; ++j) row += rho(i, j) * psi[j];
            acc += std::conj(psi[i]) * row;
        }
        p[k] = acc.real();
    }
    return p;
}

} // namespace cohest
