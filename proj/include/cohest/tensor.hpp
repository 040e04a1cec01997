#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cohest {

using complex = std::complex<double>;

namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double eigen_residual = 1e-9;
inline constexpr double trace = 1e-10;
inline constexpr double negative_eigenvalue = 1e-8;
} // namespace tol

// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    // |v><v|
    static ComplexMatrix outer(std::span<const complex> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const complex> entries() const { return data_; }
    std::span<complex> entries() { return data_; }

    bool is_hermitian(double tolerance = tol::hermitian) const;
    complex trace() const;
    ComplexMatrix adjoint() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(complex scale);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(complex scale, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// Real eigenvalues sorted in descending order.
struct RealSpectrum {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double sum() const;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Tr(a b) in O(rows * cols) without forming the product.
complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Cyclic complex Jacobi. Throws NotHermitian when m fails the symmetry check.
RealSpectrum hermitian_eigenvalues(const ComplexMatrix& m);

// Clamps eigenvalues in [-1e-8, 0) to zero. Larger negative values are kept so
// callers can detect an invalid state.
RealSpectrum clamp_numerical_noise(RealSpectrum spectrum);

} // namespace cohest
