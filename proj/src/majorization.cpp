#include "cohest/majorization.hpp"

#include "cohest/error.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>

namespace cohest {

SortedDistribution::SortedDistribution(std::vector<double> values) : values_(std::move(values)) {
    for (auto& v : values_) {
        if (v < 0.0) {
            if (v < -1e-12) throw InvalidState("distribution has a negative entry");
            v = 0.0;
        }
    }
    std::stable_sort(values_.begin(), values_.end(), std::greater<>());
    const double total = std::accumulate(values_.begin(), values_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) throw InvalidState("distribution does not sum to 1");
}

SortedDistribution SortedDistribution::uniform(std::size_t d) {
    return SortedDistribution(std::vector<double>(d, 1.0 / double(d)));
}

SortedDistribution SortedDistribution::point_mass(std::size_t d) {
    std::vector<double> v(d, 0.0);
    v.front() = 1.0;
    return SortedDistribution(std::move(v));
}

SortedDistribution SortedDistribution::padded(std::size_t d) const {
    if (d < size()) throw DimensionMismatch("cannot pad to a shorter length");
    SortedDistribution out = *this;
    out.values_.resize(d, 0.0);
    return out;
}

CumulativeVector CumulativeVector::of(const SortedDistribution& p) {
    CumulativeVector c;
    c.sums.resize(p.size());
    std::partial_sum(p.values().begin(), p.values().end(), c.sums.begin());
    return c;
}

SortedDistribution CumulativeVector::differences() const {
    std::vector<double> v(sums.size());
    double prev = 0.0;
    for (std::size_t k = 0; k < sums.size(); ++k) {
        v[k] = sums[k] - prev;
        prev = sums[k];
    }
    return SortedDistribution(std::move(v));
}

namespace {

std::pair<SortedDistribution, SortedDistribution> pad_pair(const SortedDistribution& a,
                                                           const SortedDistribution& b) {
    const std::size_t d = std::max(a.size(), b.size());
    return {a.padded(d), b.padded(d)};
}

// Least concave majorant of the points (k, c_k), k = 0..d with c_0 = 0,
// via the upper convex hull.
std::vector<double> least_concave_majorant(const std::vector<double>& c) {
    const std::size_t d = c.size();
    std::vector<double> y(d + 1);
    y[0] = 0.0;
    std::copy(c.begin(), c.end(), y.begin() + 1);

    std::vector<std::size_t> hull;
    for (std::size_t k = 0; k <= d; ++k) {
        while (hull.size() >= 2) {
            const std::size_t i = hull[hull.size() - 2], j = hull.back();
            // Drop j when it lies on or below the chord from i to k.
            const double lhs = (y[j] - y[i]) * double(k - i);
            const double rhs = (y[k] - y[i]) * double(j - i);
            if (lhs <= rhs) hull.pop_back();
            else break;
        }
        hull.push_back(k);
    }

    std::vector<double> out(d);
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const std::size_t i = hull[h], j = hull[h + 1];
        const double slope = (y[j] - y[i]) / double(j - i);
        for (std::size_t k = i + 1; k <= j; ++k) out[k - 1] = y[i] + slope * double(k - i);
    }
    return out;
}

} // namespace

bool majorizes(const SortedDistribution& a, const SortedDistribution& b, double tolerance) {
    const auto [pa, pb] = pad_pair(a, b);
    double sa = 0.0, sb = 0.0;
    for (std::size_t k = 0; k < pa.size(); ++k) {
        sa += pa[k];
        sb += pb[k];
        if (sa < sb - tolerance) return false;
    }
    return true;
}

SortedDistribution join(const SortedDistribution& a, const SortedDistribution& b) {
    const auto [pa, pb] = pad_pair(a, b);
    const auto ca = CumulativeVector::of(pa);
    const auto cb = CumulativeVector::of(pb);
    std::vector<double> upper(ca.sums.size());
    for (std::size_t k = 0; k < upper.size(); ++k) upper[k] = std::max(ca.sums[k], cb.sums[k]);
    return CumulativeVector{least_concave_majorant(upper)}.differences();
}

SortedDistribution meet_explicit(std::span<const SortedDistribution> items) {
    if (items.empty()) throw InvalidState("meet of an empty family");
    std::size_t d = 0;
    for (const auto& p : items) d = std::max(d, p.size());
    auto lower = CumulativeVector::of(items.front().padded(d));
    for (const auto& p : items.subspan(1)) {
        const auto c = CumulativeVector::of(p.padded(d));
        for (std::size_t k = 0; k < d; ++k) lower.sums[k] = std::min(lower.sums[k], c.sums[k]);
    }
    return lower.differences();
}

lp::LinearProgram polytope_program(const ConstraintSet& x, std::size_t extra) {
    lp::LinearProgram program(x.dim + extra);
    for (std::size_t r = 0; r < x.size(); ++r) {
        std::vector<double> row(x.dim + extra, 0.0);
        std::copy(x.rows[r].begin(), x.rows[r].end(), row.begin());
        program.add_range(std::move(row), x.lower[r], x.upper[r]);
    }
    return program;
}

double min_topk_sum(const ConstraintSet& x, std::size_t k) {
    const std::size_t d = x.dim;
    if (k < 1 || k > d) throw DimensionMismatch("top-k index outside [1, d]");
    // Variables: p (d), t, s (d). p >= 0 implies an optimal t >= 0.
    auto program = polytope_program(x, d + 1);
    const std::size_t t = d;
    std::vector<double> objective(2 * d + 1, 0.0);
    objective[t] = double(k);
    for (std::size_t i = 0; i < d; ++i) objective[t + 1 + i] = 1.0;
    program.set_objective(std::move(objective));
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> row(2 * d + 1, 0.0);
        row[i] = 1.0;
        row[t] = -1.0;
        row[t + 1 + i] = -1.0;
        program.add_less_equal(std::move(row), 0.0);
    }
    const auto sol = lp::solve(program);
    switch (sol.status) {
    case lp::Status::Optimal: return sol.objective;
    case lp::Status::Infeasible: throw NoFeasibleSolution("constraint set is empty");
    case lp::Status::Unbounded: break;
    }
    throw UnboundedProgram("top-k program is unbounded; constraint set is malformed");
}

std::optional<std::vector<double>> pinned_point(const ConstraintSet& x) {
    const std::size_t d = x.dim;
    std::vector<std::vector<double>> eq;
    std::vector<double> rhs;
    for (std::size_t r = 0; r < x.size(); ++r) {
        if (x.lower[r] == x.upper[r]) {
            eq.push_back(x.rows[r]);
            rhs.push_back(x.lower[r]);
        }
    }
    if (eq.size() < d) return std::nullopt;

    // Gaussian elimination with partial pivoting on [E | rhs].
    const std::size_t m = eq.size();
    std::vector<std::size_t> pivot_row(d);
    std::size_t r = 0;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t best = m;
        double best_abs = 1e-9;
        for (std::size_t i = r; i < m; ++i) {
            if (std::abs(eq[i][col]) > best_abs) {
                best_abs = std::abs(eq[i][col]);
                best = i;
            }
        }
        if (best == m) return std::nullopt;
        std::swap(eq[r], eq[best]);
        std::swap(rhs[r], rhs[best]);
        const auto& prow = eq[r];
        const double inv = 1.0 / prow[col];
#pragma omp parallel for schedule(static) if ((m - r) * d >= (1u << 16))
        for (std::size_t i = r + 1; i < m; ++i) {
            const double f = eq[i][col] * inv;
            if (f == 0.0) continue;
            for (std::size_t j = col; j < d; ++j) eq[i][j] -= f * prow[j];
            rhs[i] -= f * rhs[r];
        }
        pivot_row[col] = r++;
    }
    for (std::size_t i = d; i < m; ++i) {
        if (std::abs(rhs[i]) > 1e-8) throw NoFeasibleSolution("equality constraints are inconsistent");
    }
    std::vector<double> p(d);
    for (std::size_t col = d; col-- > 0;) {
        const auto& row = eq[pivot_row[col]];
        double s = rhs[pivot_row[col]];
        for (std::size_t j = col + 1; j < d; ++j) s -= row[j] * p[j];
        p[col] = s / row[col];
    }
    if (!x.contains(p, lp::tol::feasibility)) {
        throw NoFeasibleSolution("the point fixed by the equality constraints lies outside the polytope");
    }
    for (auto& v : p) v = std::max(v, 0.0);
    return p;
}

namespace {

CumulativeVector assemble(std::vector<double> sums) {
    const double total = sums.back();
    if (std::abs(total - 1.0) > 1e-8) {
        throw InternalMismatch("top-d sum over the polytope is " + std::to_string(total) + ", not 1");
    }
    sums.back() = 1.0;
    return CumulativeVector{std::move(sums)};
}

SortedDistribution finish(const CumulativeVector& c) {
    // Differences may carry LP-tolerance noise that breaks exact ordering.
    std::vector<double> v(c.sums.size());
    double prev = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = std::max(c.sums[k] - prev, 0.0);
        prev = c.sums[k];
    }
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    for (auto& e : v) e /= total;
    return SortedDistribution(std::move(v));
}

} // namespace

CumulativeVector meet_cumulative(const ConstraintSet& x) {
    const std::size_t d = x.dim;
    std::vector<double> sums(d);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 1; k <= d; ++k) {
        try {
            sums[k - 1] = min_topk_sum(x, k);
        } catch (...) {
#pragma omp critical(cohest_meet_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return assemble(std::move(sums));
}

std::optional<ConstraintSet> drop_forced_zeros(const ConstraintSet& x) {
    const std::size_t d = x.dim;
    if (x.size() == 0 || x.lower[0] != 1.0 || x.upper[0] != 1.0) return std::nullopt;
    if (std::any_of(x.rows[0].begin(), x.rows[0].end(), [](double v) { return v != 1.0; })) return std::nullopt;

    // Only coefficients clearly separated from the extreme are forced, so
    // rows that are zero up to rounding never trigger a reduction.
    constexpr double at_extreme = 1e-12;
    constexpr double separated = 1e-6;
    std::vector<bool> zero(d, false);
    for (std::size_t r = 1; r < x.size(); ++r) {
        const auto& row = x.rows[r];
        const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
        if (x.lower[r] >= *hi - at_extreme) {
            for (std::size_t k = 0; k < d; ++k) zero[k] = zero[k] || row[k] < *hi - separated;
        }
        if (x.upper[r] <= *lo + at_extreme) {
            for (std::size_t k = 0; k < d; ++k) zero[k] = zero[k] || row[k] > *lo + separated;
        }
    }
    if (std::none_of(zero.begin(), zero.end(), [](bool z) { return z; })) return std::nullopt;
    if (std::all_of(zero.begin(), zero.end(), [](bool z) { return z; })) {
        throw NoFeasibleSolution("constraints at their extremes exclude every outcome");
    }

    ConstraintSet reduced;
    for (std::size_t k = 0; k < d; ++k) reduced.dim += zero[k] ? 0 : 1;
    for (std::size_t r = 0; r < x.size(); ++r) {
        std::vector<double> row;
        row.reserve(reduced.dim);
        for (std::size_t k = 0; k < d; ++k) {
            if (!zero[k]) row.push_back(x.rows[r][k]);
        }
        reduced.add_row(std::move(row), x.lower[r], x.upper[r], x.labels[r]);
    }
    return reduced;
}

namespace {

template <class Cumulative>
SortedDistribution meet_with(const ConstraintSet& x, Cumulative cumulative) {
    if (auto reduced = drop_forced_zeros(x)) {
        return meet_with(*reduced, cumulative).padded(x.dim);
    }
    if (auto p = pinned_point(x)) return SortedDistribution(std::move(*p));
    return finish(cumulative(x));
}

} // namespace

SortedDistribution meet_over_polytope(const ConstraintSet& x) {
    return meet_with(x, [](const ConstraintSet& c) { return meet_cumulative(c); });
}

namespace serial {

CumulativeVector meet_cumulative(const ConstraintSet& x) {
    std::vector<double> sums(x.dim);
    for (std::size_t k = 1; k <= x.dim; ++k) sums[k - 1] = min_topk_sum(x, k);
    return assemble(std::move(sums));
}

SortedDistribution meet_over_polytope(const ConstraintSet& x) {
    return meet_with(x, [](const ConstraintSet& c) { return serial::meet_cumulative(c); });
}

} // namespace serial

} // namespace cohest
