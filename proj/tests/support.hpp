#pragma once

#include "cohest/states.hpp"
#include "cohest/tensor.hpp"

#include <random>
#include <vector>

namespace cohest::testing {

inline ComplexMatrix random_matrix(std::size_t d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(d, d);
    for (auto& e : m.entries()) e = complex(g(rng), g(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
    auto m = random_matrix(d, rng);
    auto h = m + m.adjoint();
    h *= 0.5;
    return h;
}

// G G^dagger / Tr, full rank with probability one.
inline DensityMatrix random_density(std::size_t n, std::mt19937_64& rng) {
    const std::size_t d = std::size_t(1) << n;
    const auto g = random_matrix(d, rng);
    auto rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    // Symmetrize away rounding so the Hermitian check is exact.
    auto sym = rho + rho.adjoint();
    sym *= 0.5;
    return DensityMatrix(n, sym);
}

inline std::vector<double> random_distribution(std::size_t d, std::mt19937_64& rng, double zero_chance = 0.0) {
    std::exponential_distribution<double> e;
    std::uniform_real_distribution<double> u;
    std::vector<double> p(d);
    double s = 0.0;
    for (auto& v : p) {
        v = u(rng) < zero_chance ? 0.0 : e(rng);
        s += v;
    }
    if (s == 0.0) {
        p[0] = 1.0;
        return p;
    }
    for (auto& v : p) v /= s;
    return p;
}

} // namespace cohest::testing
