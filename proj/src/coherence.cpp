#include "cohest/coherence.hpp"

#include "cohest/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace cohest {

std::string_view to_string(Measure m) {
    switch (m) {
    case Measure::Cr: return "Cr";
    case Measure::Cl1: return "Cl1";
    case Measure::Cl2: return "Cl2";
    case Measure::Cg: return "Cg";
    case Measure::CR: return "CR";
    case Measure::Cf: return "Cf";
    case Measure::Cl1tilde: return "Cl1tilde";
    }
    return "?";
}

std::string_view to_string(Family f) {
    switch (f) {
    case Family::NoisyGHZ: return "ghz";
    case Family::NoisyCluster: return "cluster";
    }
    return "?";
}

namespace {

std::vector<double> spectrum_of(const DensityMatrix& rho) {
    return clamp_numerical_noise(hermitian_eigenvalues(rho.matrix())).values;
}

// Above this dimension the linear-entropy route uses Tr(rho^2) instead of an
// eigensolve; the two agree because sum lambda^2 = Tr(rho^2).
constexpr std::size_t eigen_route_limit = 128;

} // namespace

double exact_cr(const DensityMatrix& rho) {
    const auto d = diagonal(rho);
    const double v = von_neumann_entropy(d.probs) - von_neumann_entropy(spectrum_of(rho));
    return std::max(v, 0.0);
}

double exact_cl1(const DensityMatrix& rho) {
    const std::size_t d = rho.dim();
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (i != j) s += std::abs(rho(i, j));
        }
    }
    return s;
}

double exact_cl2(const DensityMatrix& rho) {
    const std::size_t d = rho.dim();
    double off = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (i != j) off += std::norm(rho(i, j));
        }
    }
    const auto diag = diagonal(rho);
    double purity = 0.0;
    if (d <= eigen_route_limit) {
        for (double l : spectrum_of(rho)) purity += l * l;
    } else {
        purity = trace_product(rho.matrix(), rho.matrix()).real();
    }
    const double entropic = linear_entropy(diag.probs) - (1.0 - purity);
    if (std::abs(entropic - off) > 1e-7) {
        throw InternalMismatch("off-diagonal and entropic C_l2 disagree: " + std::to_string(off) + " vs " +
                               std::to_string(entropic));
    }
    return std::max(off, 0.0);
}

double exact_cg_pure(const PureState& psi) {
    double best = 0.0;
    for (const auto& a : psi.amplitudes()) best = std::max(best, std::norm(a));
    return 1.0 - best;
}

std::optional<double> family_exact(Family family, std::size_t n, double eta, Measure measure) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw EtaOutOfRange("eta must lie in [0, 1]");
    if (n < 1 || n > 20) throw DimensionMismatch("qubit count outside [1, 20]");
    const double d = std::ldexp(1.0, int(n));
    const bool pure = eta == 0.0;

    // Both families have spectrum {1 - eta + eta/d, eta/d (d-1 times)}.
    auto spectral_entropy = [&] {
        const double top = 1.0 - eta + eta / d;
        const double rest = eta / d;
        double s = top > 0.0 ? -top * std::log2(top) : 0.0;
        if (rest > 0.0) s -= (d - 1.0) * rest * std::log2(rest);
        return s;
    };

    if (family == Family::NoisyGHZ) {
        const double cl1 = 1.0 - eta;
        auto cr = [&] {
            const double a = (1.0 - eta) / 2.0 + eta / d;
            const double b = eta / d;
            double s = -2.0 * a * std::log2(a);
            if (b > 0.0) s -= (d - 2.0) * b * std::log2(b);
            return std::max(s - spectral_entropy(), 0.0);
        };
        switch (measure) {
        case Measure::Cl1:
        case Measure::CR: return cl1;
        case Measure::Cl2: return cl1 * cl1 / 2.0;
        case Measure::Cr: return cr();
        case Measure::Cg: return pure ? std::optional<double>(0.5) : std::nullopt;
        case Measure::Cf: return pure ? std::optional<double>(cr()) : std::nullopt;
        case Measure::Cl1tilde: return pure ? std::optional<double>(cl1) : std::nullopt;
        }
    } else {
        const double cl1 = (d - 1.0) * (1.0 - eta);
        const double cr = std::max(double(n) - spectral_entropy(), 0.0);
        switch (measure) {
        case Measure::Cl1:
        case Measure::CR: return cl1;
        case Measure::Cl2: return (d - 1.0) / d * (1.0 - eta) * (1.0 - eta);
        case Measure::Cr: return cr;
        case Measure::Cg: return pure ? std::optional<double>(1.0 - 1.0 / d) : std::nullopt;
        case Measure::Cf: return pure ? std::optional<double>(cr) : std::nullopt;
        case Measure::Cl1tilde: return pure ? std::optional<double>(cl1) : std::nullopt;
        }
    }
    return std::nullopt;
}

namespace {

SortedDistribution joined_with(const DiagonalDistribution& diag, const SortedDistribution& meet) {
    return join(SortedDistribution(diag.probs), meet);
}

} // namespace

double lower_cr(const DiagonalDistribution& diag, const SortedDistribution& meet) {
    const auto j = joined_with(diag, meet);
    return std::max(von_neumann_entropy(diag.probs) - von_neumann_entropy(j.values()), 0.0);
}

double lower_cl2(const DiagonalDistribution& diag, const SortedDistribution& meet) {
    const auto j = joined_with(diag, meet);
    return std::max(linear_entropy(diag.probs) - linear_entropy(j.values()), 0.0);
}

UVSequence uv_sequence(const DiagonalDistribution& diag, double l2) {
    if (!(l2 > 1e-12)) throw ZeroL2("l2 bound is zero; the l1 and robustness bounds vanish");
    const auto& p = diag.probs;
    const std::size_t d = p.size();

    UVSequence s;
    s.u.reserve(d * (d - 1) / 2);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) s.u.push_back(2.0 * p[i] * p[j] / l2);
    }
    for (auto& v : s.u) v = std::max(v, 0.0);
    std::sort(s.u.begin(), s.u.end(), std::greater<>());

    const std::size_t count = s.u.size();
    s.vhat.assign(count, 0.0);
    double partial = 0.0;
    std::size_t m = 0;
    while (m < count && partial + s.u[m] <= 1.0 + 1e-12) {
        partial += s.u[m];
        s.vhat[m] = s.u[m];
        ++m;
    }
    s.M = m;
    // A remainder within the cut tolerance is rounding in the sum of u.
    if (m < count) s.vhat[m] = 1.0 - partial > 1e-12 ? 1.0 - partial : 0.0;
    // Past the cut the robustness sum divides by vhat itself.
    s.uhat = s.vhat;
    return s;
}

L1RobustnessBounds lower_cl1_cr_pair(const DiagonalDistribution& diag, double l2) {
    if (!(l2 > 1e-12)) return {0.0, 0.0};
    const auto s = uv_sequence(diag, l2);
    double l1 = 0.0, rob = 0.0;
    for (std::size_t k = 0; k < s.vhat.size(); ++k) {
        const double v = s.vhat[k];
        if (v <= 0.0) continue;
        l1 += std::sqrt(v);
        if (s.uhat[k] > 0.0) rob += v / std::sqrt(s.uhat[k]);
    }
    const double scale = std::sqrt(2.0 * l2);
    return {scale * l1, scale * rob};
}

double lower_cg(double l2, std::size_t d) {
    if (d < 2) throw DimensionMismatch("geometric bound needs d >= 2");
    const double ratio = double(d - 1) / double(d);
    if (!(l2 >= -1e-12 && l2 <= ratio + 1e-12)) {
        throw L2OutOfRange("l2 = " + std::to_string(l2) + " outside [0, (d-1)/d]");
    }
    const double arg = std::max(1.0 - l2 / ratio, 0.0);
    return std::max(ratio * (1.0 - std::sqrt(arg)), 0.0);
}

ConvexRoofBounds convex_roof_passthrough(double l_cr, double l_cl1) { return {l_cr, l_cl1}; }

double witness_bound(const DensityMatrix& rho, Witness which, const PureState& target) {
    if (rho.dim() != target.dim()) throw DimensionMismatch("witness and state dimensions differ");
    const std::size_t d = rho.dim();
    const auto t = target.amplitudes();
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < d; ++i) {
        if (std::norm(t[i]) > 0.0) support.push_back(i);
    }
    complex fidelity = 0.0;
    for (auto i : support) {
        for (auto j : support) fidelity += std::conj(t[i]) * rho(i, j) * t[j];
    }
    const double f = fidelity.real();
    if (which == Witness::W3) return f - 0.5;
    double dephased = 0.0;
    for (auto i : support) dephased += std::norm(t[i]) * rho(i, i).real();
    return f - dephased;
}

double witness_bound(const DensityMatrix& rho, Witness which, std::size_t n) {
    if (rho.qubits() != n) throw DimensionMismatch("witness qubit count differs from the state");
    return witness_bound(rho, which, ghz(n));
}

double tightness(double exact, double lower) {
    if (!(exact > 1e-12)) throw ExactIsZero("tightness ratio undefined for a zero exact value");
    return lower / exact;
}

double BoundSet::operator[](Measure m) const {
    switch (m) {
    case Measure::Cr: return cr;
    case Measure::Cl1: return cl1;
    case Measure::Cl2: return cl2;
    case Measure::Cg: return cg;
    case Measure::CR: return robustness;
    case Measure::Cf: return cf;
    case Measure::Cl1tilde: return cl1tilde;
    }
    return 0.0;
}

BoundSet spectrum_bounds(const DiagonalDistribution& diag, const SortedDistribution& meet) {
    BoundSet b;
    b.cr = lower_cr(diag, meet);
    b.cl2 = lower_cl2(diag, meet);
    const auto pair = lower_cl1_cr_pair(diag, b.cl2);
    b.cl1 = pair.cl1;
    b.robustness = pair.cr;
    b.cg = lower_cg(b.cl2, diag.size());
    const auto roof = convex_roof_passthrough(b.cr, b.cl1);
    b.cf = roof.cf;
    b.cl1tilde = roof.cl1tilde;
    return b;
}

std::vector<CoherenceReport> make_reports(const BoundSet& bounds,
                                          const std::array<std::optional<double>, 7>& exact) {
    std::vector<CoherenceReport> out;
    for (std::size_t i = 0; i < all_measures.size(); ++i) {
        CoherenceReport r;
        r.measure = all_measures[i];
        r.lower_bound = bounds[r.measure];
        r.exact = exact[i];
        if (!r.exact && r.measure == Measure::Cf && exact[0]) {
            r.exact = exact[0];
            r.surrogate = true;
        }
        if (!r.exact && r.measure == Measure::Cl1tilde && exact[1]) {
            r.exact = exact[1];
            r.surrogate = true;
        }
        if (r.exact && *r.exact > 1e-12) r.ratio = tightness(*r.exact, r.lower_bound);
        out.push_back(r);
    }
    return out;
}

} // namespace cohest
