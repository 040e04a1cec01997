#pragma once

#include "cohest/lp.hpp"
#include "cohest/measurement.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace cohest {

// Probability vector in nonincreasing order. Entries in [-1e-12, 0) are
// clamped to 0; the sum must be 1 within 1e-9.
class SortedDistribution {
public:
    SortedDistribution() = default;
    explicit SortedDistribution(std::vector<double> values);

    static SortedDistribution uniform(std::size_t d);
    static SortedDistribution point_mass(std::size_t d);

    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    // Zero-padded copy of length d >= size().
    SortedDistribution padded(std::size_t d) const;

private:
    std::vector<double> values_;
};

// Running sums c_1..c_d of a sorted distribution.
struct CumulativeVector {
    std::vector<double> sums;

    static CumulativeVector of(const SortedDistribution& p);
    // Differences c_k - c_{k-1} with c_0 = 0.
    SortedDistribution differences() const;
};

inline constexpr double majorization_tolerance = 1e-10;

// a majorizes b: every prefix sum of a is at least the prefix sum of b.
bool majorizes(const SortedDistribution& a, const SortedDistribution& b,
               double tolerance = majorization_tolerance);

// Least upper bound: least concave majorant of the pointwise maximum of the
// cumulative vectors.
SortedDistribution join(const SortedDistribution& a, const SortedDistribution& b);

// Greatest lower bound: pointwise minimum of cumulative vectors.
SortedDistribution meet_explicit(std::span<const SortedDistribution> items);

// min over p in X of the sum of the k largest entries of p, by the LP
//   minimize k t + sum_i s_i  s.t.  s_i >= p_i - t,  s >= 0,  p in X.
// Throws NoFeasibleSolution when X is empty.
double min_topk_sum(const ConstraintSet& x, std::size_t k);

// LP over p in X (p occupies the first x.dim variables) plus `extra`
// additional variables with default bounds [0, inf).
lp::LinearProgram polytope_program(const ConstraintSet& x, std::size_t extra = 0);

// When the equality rows of X determine p uniquely, returns that point
// (throws NoFeasibleSolution if it violates the remaining constraints).
std::optional<std::vector<double>> pinned_point(const ConstraintSet& x);

// Cumulative c_k = min_topk_sum(x, k) for k = 1..d. The top-k programs are
// independent and run across OpenMP threads.
CumulativeVector meet_cumulative(const ConstraintSet& x);

// When some row sits at the largest (or smallest) of its coefficients, every
// coordinate with a different coefficient must vanish. Returns X restricted
// to the surviving coordinates, or nothing if no coordinate is forced.
// Requires row 0 to be the normalization row.
std::optional<ConstraintSet> drop_forced_zeros(const ConstraintSet& x);

// Meet of all distributions in X: the differences of meet_cumulative, or the
// sorted point itself when X is a single point.
SortedDistribution meet_over_polytope(const ConstraintSet& x);

namespace serial {
CumulativeVector meet_cumulative(const ConstraintSet& x);
SortedDistribution meet_over_polytope(const ConstraintSet& x);
} // namespace serial

} // namespace cohest
