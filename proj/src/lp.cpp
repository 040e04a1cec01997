#include "cohest/lp.hpp"

#include "cohest/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cohest::lp {

LinearProgram::LinearProgram(std::size_t variables)
    : objective_(variables, 0.0), lower_(variables, 0.0), upper_(variables, infinity) {}

void LinearProgram::set_objective(std::vector<double> objective) {
    if (objective.size() != variables()) throw DimensionMismatch("objective length differs from variable count");
    objective_ = std::move(objective);
}

void LinearProgram::set_bounds(std::size_t var, double lower, double upper) {
    if (var >= variables()) throw DimensionMismatch("bound on a nonexistent variable");
    lower_[var] = lower;
    upper_[var] = upper;
}

void LinearProgram::add_equality(std::vector<double> coefficients, double rhs) {
    add_range(std::move(coefficients), rhs, rhs);
}

void LinearProgram::add_range(std::vector<double> coefficients, double lower, double upper) {
    if (coefficients.size() != variables()) throw DimensionMismatch("row length differs from variable count");
    rows_.push_back(Row{std::move(coefficients), lower, upper});
}

double LinearProgram::infeasibility(const std::vector<double>& x) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < variables(); ++j) {
        worst = std::max({worst, lower_[j] - x[j], x[j] - upper_[j]});
    }
    for (const auto& row : rows_) {
        double ax = 0.0;
        for (std::size_t j = 0; j < variables(); ++j) ax += row.coefficients[j] * x[j];
        worst = std::max({worst, row.lower - ax, ax - row.upper});
    }
    return worst;
}

namespace {

enum class Sense { LessEqual, GreaterEqual, Equal };

// x_j = offset + sum of coef * y_col over at most two nonnegative columns.
struct VariableMap {
    double offset = 0.0;
    std::size_t col[2] = {0, 0};
    double coef[2] = {0.0, 0.0};
    int terms = 0;
};

struct StandardRow {
    std::vector<double> a;
    double rhs;
    Sense sense;
};

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

    double& at(std::size_t i, std::size_t j) { return data_[i * (n_ + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * (n_ + 1) + j]; }
    double& rhs(std::size_t i) { return at(i, n_); }
    double& cost(std::size_t j) { return at(m_, j); }

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }

    void pivot(std::size_t r, std::size_t e) {
        const std::size_t width = n_ + 1;
        double* pr = &data_[r * width];
        const double inv = 1.0 / pr[e];
        for (std::size_t j = 0; j < width; ++j) pr[j] *= inv;
        pr[e] = 1.0;
#pragma omp parallel for schedule(static) if ((m_ + 1) * width >= (1u << 18))
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            double* pi = &data_[i * width];
            const double f = pi[e];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j) pi[j] -= f * pr[j];
            pi[e] = 0.0;
        }
    }

private:
    std::size_t m_, n_;
    std::vector<double> data_;
};

class Simplex {
public:
    Simplex(Tableau& t, std::vector<std::size_t>& basis, std::vector<bool>& blocked, std::size_t cap)
        : t_(t), basis_(basis), blocked_(blocked), cap_(cap) {}

    // Returns false when unbounded.
    bool run(std::size_t& iterations) {
        const std::size_t m = t_.rows(), n = t_.cols();
        while (true) {
            if (iterations >= cap_) throw NumericalBreakdown("simplex iteration cap reached", iterations);

            std::size_t enter = n;
            if (bland_) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (!blocked_[j] && t_.cost(j) < -tol::reduced_cost) {
                        enter = j;
                        break;
                    }
                }
            } else {
                double best = -tol::reduced_cost;
                for (std::size_t j = 0; j < n; ++j) {
                    if (!blocked_[j] && t_.cost(j) < best) {
                        best = t_.cost(j);
                        enter = j;
                    }
                }
            }
            if (enter == n) return true;

            std::size_t leave = m;
            double best_ratio = infinity;
            for (std::size_t i = 0; i < m; ++i) {
                const double a = t_.at(i, enter);
                if (a <= tol::pivot) continue;
                const double ratio = std::max(t_.rhs(i), 0.0) / a;
                if (leave == m || ratio < best_ratio - 1e-12) {
                    leave = i;
                    best_ratio = ratio;
                } else if (ratio <= best_ratio + 1e-12) {
                    const bool take = bland_ ? basis_[i] < basis_[leave] : a > t_.at(leave, enter);
                    if (take) {
                        leave = i;
                        best_ratio = std::min(best_ratio, ratio);
                    }
                }
            }
            if (leave == m) return false;

            if (best_ratio <= 1e-12) {
                if (++degenerate_run_ > degenerate_limit) bland_ = true;
            } else {
                degenerate_run_ = 0;
            }
            t_.pivot(leave, enter);
            for (std::size_t i = 0; i < m; ++i) {
                if (t_.rhs(i) < 0.0 && t_.rhs(i) > -tol::feasibility) t_.rhs(i) = 0.0;
            }
            basis_[leave] = enter;
            ++iterations;
        }
    }

private:
    static constexpr std::size_t degenerate_limit = 50;
    Tableau& t_;
    std::vector<std::size_t>& basis_;
    std::vector<bool>& blocked_;
    std::size_t cap_;
    bool bland_ = false;
    std::size_t degenerate_run_ = 0;
};

} // namespace

Solution solve(const LinearProgram& program) {
    const std::size_t nvar = program.variables();
    Solution result;

    // Map every variable onto nonnegative columns.
    std::vector<VariableMap> vars(nvar);
    std::vector<StandardRow> rows;
    std::size_t ycols = 0;
    std::vector<std::pair<std::size_t, double>> column_caps;
    for (std::size_t j = 0; j < nvar; ++j) {
        const double lo = program.lower_bounds()[j];
        const double hi = program.upper_bounds()[j];
        auto& v = vars[j];
        if (std::isfinite(lo)) {
            if (std::isfinite(hi) && hi < lo) return result;
            v.offset = lo;
            v.col[0] = ycols++;
            v.coef[0] = 1.0;
            v.terms = 1;
            if (std::isfinite(hi)) column_caps.emplace_back(v.col[0], hi - lo);
        } else if (std::isfinite(hi)) {
            v.offset = hi;
            v.col[0] = ycols++;
            v.coef[0] = -1.0;
            v.terms = 1;
        } else {
            v.col[0] = ycols++;
            v.coef[0] = 1.0;
            v.col[1] = ycols++;
            v.coef[1] = -1.0;
            v.terms = 2;
        }
    }

    auto push_row = [&](std::vector<double> a, double rhs, Sense sense) {
        if (rhs < 0.0) {
            for (auto& x : a) x = -x;
            rhs = -rhs;
            if (sense == Sense::LessEqual) sense = Sense::GreaterEqual;
            else if (sense == Sense::GreaterEqual) sense = Sense::LessEqual;
        }
        rows.push_back(StandardRow{std::move(a), rhs, sense});
    };

    for (const auto& row : program.rows()) {
        if (row.lower > row.upper) return result;
        std::vector<double> a(ycols, 0.0);
        double shift = 0.0;
        for (std::size_t j = 0; j < nvar; ++j) {
            const double c = row.coefficients[j];
            if (c == 0.0) continue;
            shift += c * vars[j].offset;
            for (int t = 0; t < vars[j].terms; ++t) a[vars[j].col[t]] += c * vars[j].coef[t];
        }
        if (row.lower == row.upper) {
            push_row(std::move(a), row.lower - shift, Sense::Equal);
            continue;
        }
        if (std::isfinite(row.lower)) push_row(a, row.lower - shift, Sense::GreaterEqual);
        if (std::isfinite(row.upper)) push_row(std::move(a), row.upper - shift, Sense::LessEqual);
    }
    for (auto [col, cap] : column_caps) {
        std::vector<double> a(ycols, 0.0);
        a[col] = 1.0;
        push_row(std::move(a), cap, Sense::LessEqual);
    }

    // Columns: structural | slack or surplus | artificial.
    const std::size_t m = rows.size();
    std::size_t nslack = 0, nart = 0;
    for (const auto& r : rows) {
        if (r.sense != Sense::Equal) ++nslack;
        if (r.sense != Sense::LessEqual) ++nart;
    }
    const std::size_t ncols = ycols + nslack + nart;
    Tableau t(m, ncols);
    std::vector<std::size_t> basis(m);
    std::vector<bool> artificial(ncols, false);
    std::size_t slack_col = ycols, art_col = ycols + nslack;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < ycols; ++j) t.at(i, j) = rows[i].a[j];
        t.rhs(i) = rows[i].rhs;
        switch (rows[i].sense) {
        case Sense::LessEqual:
            t.at(i, slack_col) = 1.0;
            basis[i] = slack_col++;
            break;
        case Sense::GreaterEqual:
            t.at(i, slack_col++) = -1.0;
            t.at(i, art_col) = 1.0;
            artificial[art_col] = true;
            basis[i] = art_col++;
            break;
        case Sense::Equal:
            t.at(i, art_col) = 1.0;
            artificial[art_col] = true;
            basis[i] = art_col++;
            break;
        }
    }

    const std::size_t cap = 50 * (m + ncols) + 1000;
    std::size_t iterations = 0;

    if (nart > 0) {
        for (std::size_t i = 0; i < m; ++i) {
            if (!artificial[basis[i]]) continue;
            for (std::size_t j = 0; j <= ncols; ++j) {
                if (j < ncols && artificial[j]) continue;
                t.at(m, j) -= t.at(i, j);
            }
        }
        std::vector<bool> none(ncols, false);
        Simplex phase1(t, basis, none, cap);
        phase1.run(iterations);
        if (-t.rhs(m) > tol::feasibility) {
            result.iterations = iterations;
            return result;
        }
        // Drive zero-level artificials out of the basis where possible; rows
        // with no usable pivot are redundant and keep their artificial at 0.
        for (std::size_t i = 0; i < m; ++i) {
            if (!artificial[basis[i]]) continue;
            std::size_t best = ncols;
            double best_abs = tol::pivot;
            for (std::size_t j = 0; j < ncols; ++j) {
                if (artificial[j]) continue;
                if (std::abs(t.at(i, j)) > best_abs) {
                    best_abs = std::abs(t.at(i, j));
                    best = j;
                }
            }
            if (best != ncols) {
                t.pivot(i, best);
                basis[i] = best;
            }
        }
    }

    // Phase 2 cost row in terms of y columns.
    std::vector<double> cy(ncols, 0.0);
    for (std::size_t j = 0; j < nvar; ++j) {
        const double c = program.objective()[j];
        for (int k = 0; k < vars[j].terms; ++k) cy[vars[j].col[k]] += c * vars[j].coef[k];
    }
    for (std::size_t j = 0; j < ncols; ++j) t.cost(j) = cy[j];
    t.rhs(m) = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double cb = cy[basis[i]];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j <= ncols; ++j) t.at(m, j) -= cb * t.at(i, j);
    }

    Simplex phase2(t, basis, artificial, cap);
    const bool bounded = phase2.run(iterations);
    result.iterations = iterations;
    if (!bounded) {
        result.status = Status::Unbounded;
        return result;
    }

    std::vector<double> y(ncols, 0.0);
    for (std::size_t i = 0; i < m; ++i) y[basis[i]] = std::max(t.rhs(i), 0.0);
    result.point.assign(nvar, 0.0);
    for (std::size_t j = 0; j < nvar; ++j) {
        double x = vars[j].offset;
        for (int k = 0; k < vars[j].terms; ++k) x += vars[j].coef[k] * y[vars[j].col[k]];
        result.point[j] = x;
    }
    result.objective = 0.0;
    for (std::size_t j = 0; j < nvar; ++j) result.objective += program.objective()[j] * result.point[j];

    const double residual = program.infeasibility(result.point);
    if (residual > 1e-7) {
        throw NumericalBreakdown("optimal basis violates constraints by " + std::to_string(residual),
                                 iterations);
    }
    result.status = Status::Optimal;
    return result;
}

} // namespace cohest::lp
