#pragma once

// Small dense complex linear algebra. Everything here operates on square
// matrices of at most a few dozen rows: the two-qubit density matrices and the
// qubit-qubit-phonon register of the pulse simulator.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace tomo {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    /// Zero matrix of the given dimension.
    explicit ComplexMatrix(std::size_t dim);
    /// Throws BadDimension unless entries.size() == dim * dim.
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    /// |v><v|
    static ComplexMatrix projector(std::span<const Complex> ket);
    /// |a><b|
    static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);

    std::size_t dim() const noexcept { return dim_; }
    std::span<const Complex> entries() const noexcept { return entries_; }

    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;
    /// (H + H^dagger) / 2; exactly Hermitian.
    ComplexMatrix hermitian_part() const;

    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    /// max |H - H^dagger| over entries.
    double hermiticity_defect() const;
    double max_abs_diff(const ComplexMatrix& other) const;

    ComplexVector apply(std::span<const Complex> v) const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

/// Kronecker product; the index of `a` is the major (slower) index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b);

/// <a|b>
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Throws NotHermitian when max|H - H^dagger| exceeds 1e-10 (relative to the
/// largest entry once that exceeds one).
EigenSystem eigh(const ComplexMatrix& h);

/// Eigenvalues only, ascending.
std::vector<double> eigvalsh(const ComplexMatrix& h);

/// V f(Lambda) V^dagger for Hermitian h.
ComplexMatrix spectral_map(const ComplexMatrix& h, const std::function<Complex(double)>& f);

/// exp(i * scale * h) for Hermitian h.
ComplexMatrix unitary_from_hermitian(const ComplexMatrix& h, double scale);

enum class Subsystem { First, Second };

/// Partial transpose of a two-qubit operator, basis index 2*x1 + x2.
/// Throws BadDimension unless m is 4x4.
ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem subsystem);

}  // namespace tomo
