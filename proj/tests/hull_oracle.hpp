#pragma once

#include "cohest/measurement.hpp"
#include "lp_oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

namespace cohest::testing {

// Columns q_1..q_m (each a distribution of length d).
using Points = std::vector<std::vector<double>>;

inline double topk(std::vector<double> p, std::size_t k) {
    std::sort(p.begin(), p.end(), std::greater<>());
    return std::accumulate(p.begin(), p.begin() + std::ptrdiff_t(k), 0.0);
}

inline std::vector<double> mix(const Points& q, const std::vector<double>& lambda) {
    std::vector<double> p(q[0].size(), 0.0);
    for (std::size_t j = 0; j < q.size(); ++j)
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += lambda[j] * q[j][i];
    return p;
}

// H-representation of conv{q_j} for affinely independent q_j:
// (I - Q Q+) p = 0 and Q+ p >= 0, where Q+ is the pseudo-inverse.
inline ConstraintSet hull_constraints(const Points& q) {
    const std::size_t d = q[0].size(), m = q.size();
    // G = Q^T Q, then Q+ = G^-1 Q^T by solving column by column.
    std::vector<std::vector<double>> pinv(m, std::vector<double>(d));
    std::vector<std::vector<double>> g(m, std::vector<double>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t i = 0; i < d; ++i) g[a][b] += q[a][i] * q[b][i];
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> rhs(m), x;
        for (std::size_t a = 0; a < m; ++a) rhs[a] = q[a][i];
        detail::solve_small(g, rhs, x);
        for (std::size_t a = 0; a < m; ++a) pinv[a][i] = x[a];
    }
    ConstraintSet x = ConstraintSet::simplex(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> row(d, 0.0);
        row[i] = 1.0;
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t a = 0; a < m; ++a) row[k] -= q[a][i] * pinv[a][k];
        x.add_row(row, 0.0, 0.0, "affine");
    }
    for (std::size_t a = 0; a < m; ++a) x.add_row(pinv[a], 0.0, lp::infinity, "weight");
    return x;
}

// Exact min over the hull of the top-k sum. The objective is piecewise linear
// in the weights with breakpoints where two coordinates tie, so the minimum
// is attained where m - 1 of {lambda_j = 0} and {p_i = p_l} meet sum = 1.
inline double hull_topk_minimum(const Points& q, std::size_t k) {
    const std::size_t d = q[0].size(), m = q.size();
    std::vector<std::vector<double>> planes;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> row(m, 0.0);
        row[j] = 1.0;
        planes.push_back(row);
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t l = i + 1; l < d; ++l) {
            std::vector<double> row(m);
            for (std::size_t j = 0; j < m; ++j) row[j] = q[j][i] - q[j][l];
            planes.push_back(row);
        }
    double best = 1e300;
    const std::size_t need = m - 1;
    std::vector<std::size_t> pick(need);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == need) {
            std::vector<std::vector<double>> a{std::vector<double>(m, 1.0)};
            std::vector<double> b{1.0};
            for (auto idx : pick) {
                a.push_back(planes[idx]);
                b.push_back(0.0);
            }
            std::vector<double> lambda;
            if (!detail::solve_small(a, b, lambda)) return;
            for (double v : lambda)
                if (v < -1e-12) return;
            best = std::min(best, topk(mix(q, lambda), k));
            return;
        }
        for (std::size_t s = start; s < planes.size(); ++s) {
            pick[depth] = s;
            rec(s + 1, depth + 1);
        }
    };
    rec(0, 0);
    return best;
}

// Smallest top-k sum over a weight grid with the given resolution.
inline double sampled_topk_minimum(const Points& q, std::size_t k, std::size_t steps) {
    const std::size_t m = q.size();
    double best = 1e300;
    std::vector<std::size_t> c(m, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t left) {
        if (j + 1 == m) {
            c[j] = left;
            std::vector<double> lambda(m);
            for (std::size_t t = 0; t < m; ++t) lambda[t] = double(c[t]) / double(steps);
            best = std::min(best, topk(mix(q, lambda), k));
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            c[j] = v;
            rec(j + 1, left - v);
        }
    };
    rec(0, steps);
    return best;
}

} // namespace cohest::testing
