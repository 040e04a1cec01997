#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace cohest::lp {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

namespace tol {
inline constexpr double feasibility = 1e-8;
inline constexpr double pivot = 1e-10;
inline constexpr double reduced_cost = 1e-9;
} // namespace tol

// lower <= coefficients . x <= upper; either side may be infinite and
// lower == upper makes an equality row.
struct Row {
    std::vector<double> coefficients;
    double lower = -infinity;
    double upper = infinity;
};

// minimize objective . x subject to rows and lower <= x <= upper.
class LinearProgram {
public:
    explicit LinearProgram(std::size_t variables);

    std::size_t variables() const { return objective_.size(); }

    void set_objective(std::vector<double> objective);
    void set_bounds(std::size_t var, double lower, double upper);
    void add_equality(std::vector<double> coefficients, double rhs);
    void add_range(std::vector<double> coefficients, double lower, double upper);
    void add_less_equal(std::vector<double> coefficients, double rhs) {
        add_range(std::move(coefficients), -infinity, rhs);
    }
    void add_greater_equal(std::vector<double> coefficients, double rhs) {
        add_range(std::move(coefficients), rhs, infinity);
    }

    const std::vector<double>& objective() const { return objective_; }
    const std::vector<double>& lower_bounds() const { return lower_; }
    const std::vector<double>& upper_bounds() const { return upper_; }
    const std::vector<Row>& rows() const { return rows_; }

    // Largest violation of any row or bound by x.
    double infeasibility(const std::vector<double>& x) const;

private:
    std::vector<double> objective_;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<Row> rows_;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    std::vector<double> point;
    double objective = 0.0;
    std::size_t iterations = 0;
};

// Two-phase dense primal simplex. Pivots by Dantzig's rule and switches to
// Bland's rule after a run of degenerate pivots. Deterministic for a given
// program. Throws NumericalBreakdown past the iteration cap.
Solution solve(const LinearProgram& program);

} // namespace cohest::lp
