#include "cohest/tensor.hpp"

#include "cohest/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace cohest {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionMismatch("matrix entry count " + std::to_string(data_.size()) +
                                " does not match " + std::to_string(rows_) + "x" +
                                std::to_string(cols_));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const complex> v) {
    const std::size_t d = v.size();
    ComplexMatrix m(d, d);
#pragma omp parallel for if (d >= 256)
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) m(i, j) = v[i] * std::conj(v[j]);
    }
    return m;
}

bool ComplexMatrix::is_hermitian(double tolerance) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i; j < cols_; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tolerance) return false;
        }
    }
    return true;
}

complex ComplexMatrix::trace() const {
    complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw DimensionMismatch("matrix sum of incompatible shapes");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complex scale) {
    for (auto& x : data_) x *= scale;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
}

ComplexMatrix operator*(complex scale, ComplexMatrix m) {
    m *= scale;
    return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product of incompatible shapes");
    ComplexMatrix out(a.rows(), b.cols());
    const std::size_t inner = a.cols();
#pragma omp parallel for if (a.rows() * b.cols() * inner >= (1u << 21))
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < inner; ++k) {
            const complex aik = a(i, k);
            if (aik == complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

double RealSpectrum::sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
#pragma omp parallel for if (out.rows() >= 256)
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw DimensionMismatch("trace_product of incompatible shapes");
    }
    complex t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
    }
    return t;
}

namespace {

double off_diagonal_norm2(const ComplexMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i != j) s += std::norm(m(i, j));
        }
    }
    return s;
}

// Zeroes a(p,q) with the unitary J = D R, where D removes the phase of a(p,q)
// and R is the real Jacobi rotation of the resulting symmetric 2x2 block.
void rotate(ComplexMatrix& a, std::size_t p, std::size_t q) {
    const complex apq = a(p, q);
    const double g = std::abs(apq);
    if (g == 0.0) return;
    const complex phase = apq / g;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * g);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const complex jpp = c;
    const complex jpq = s;
    const complex jqp = -s * std::conj(phase);
    const complex jqq = c * std::conj(phase);

    const std::size_t d = a.rows();
    for (std::size_t k = 0; k < d; ++k) {
        const complex akp = a(k, p);
        const complex akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    for (std::size_t k = 0; k < d; ++k) {
        const complex apk = a(p, k);
        const complex aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

} // namespace

RealSpectrum hermitian_eigenvalues(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("eigenvalues of a non-square matrix");
    if (!m.is_hermitian()) throw NotHermitian("matrix is not Hermitian within 1e-10");

    ComplexMatrix a = m;
    const std::size_t d = a.rows();
    double scale = 0.0;
    for (const auto& x : a.entries()) scale += std::norm(x);
    constexpr int max_sweeps = 100;
    const double target = 1e-30 * std::max(scale, 1e-300);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm2(a) <= target) break;
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double g = std::abs(a(p, q));
                // Entries negligible against both diagonal values are zeroed outright.
                if (sweep > 3 && g < 1e-18 * (std::abs(a(p, p)) + std::abs(a(q, q)))) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                rotate(a, p, q);
            }
        }
    }

    RealSpectrum out;
    out.values.resize(d);
    for (std::size_t i = 0; i < d; ++i) out.values[i] = a(i, i).real();
    std::sort(out.values.begin(), out.values.end(), std::greater<>());
    return out;
}

RealSpectrum clamp_numerical_noise(RealSpectrum spectrum) {
    for (auto& v : spectrum.values) {
        if (v < 0.0 && v >= -tol::negative_eigenvalue) v = 0.0;
    }
    return spectrum;
}

} // namespace cohest
