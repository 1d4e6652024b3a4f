#include "tomo/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tomo/error.hpp"

namespace tomo {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw Error(ErrorKind::BadDimension, "expected " + std::to_string(dim_ * dim_) +
                                                 " entries, got " + std::to_string(entries_.size()));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
    entries_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) throw Error(ErrorKind::BadDimension, "matrix rows must be square");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> ket) { return outer(ket, ket); }

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::BadDimension, "outer: size mismatch");
    ComplexMatrix m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix m = *this;
    for (auto& z : m.entries_) z = std::conj(z);
    return m;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        m(i, i) = (*this)(i, i).real();
        for (std::size_t j = i + 1; j < dim_; ++j) {
            const Complex z = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : entries_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : entries_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (other.dim_ != dim_) throw Error(ErrorKind::BadDimension, "max_abs_diff: size mismatch");
    double d = 0.0;
    for (std::size_t k = 0; k < entries_.size(); ++k)
        d = std::max(d, std::abs(entries_[k] - other.entries_[k]));
    return d;
}

ComplexVector ComplexMatrix::apply(std::span<const Complex> v) const {
    if (v.size() != dim_) throw Error(ErrorKind::BadDimension, "apply: size mismatch");
    ComplexVector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rhs.dim_ != dim_) throw Error(ErrorKind::BadDimension, "operator+: size mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (rhs.dim_ != dim_) throw Error(ErrorKind::BadDimension, "operator-: size mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& z : entries_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) throw Error(ErrorKind::BadDimension, "operator*: size mismatch");
    const std::size_t n = a.dim_;
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix c(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) c(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    return c;
}

ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b) {
    ComplexVector c;
    c.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) c.push_back(x * y);
    return c;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::BadDimension, "inner: size mismatch");
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

void check_hermitian(const ComplexMatrix& h, const char* who) {
    const double scale = std::max(1.0, h.max_abs());
    const double defect = h.hermiticity_defect();
    if (defect > 1e-10 * scale) {
        throw Error(ErrorKind::NotHermitian,
                    std::string(who) + ": max|H - H^dagger| = " + std::to_string(defect));
    }
}

}  // namespace

EigenSystem eigh(const ComplexMatrix& h) {
    check_hermitian(h, "eigh");
    const std::size_t n = h.dim();
    ComplexMatrix a = h.hermitian_part();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double tol = 1e-13 * std::max(1.0, a.frobenius_norm());
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;

                // Rotate in the (p, q) plane: J = W P W^dagger where W removes the
                // phase of a_pq and P is the real Jacobi rotation.
                const Complex phase = apq / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex jpp = c, jqq = c;
                const Complex jpq = s * phase;
                const Complex jqp = -s * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    EigenSystem out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::vector<double> eigvalsh(const ComplexMatrix& h) { return eigh(h).values; }

ComplexMatrix spectral_map(const ComplexMatrix& h, const std::function<Complex(double)>& f) {
    const auto es = eigh(h);
    const std::size_t n = h.dim();
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex fk = f(es.values[k]);
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = es.vectors(i, k) * fk;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(es.vectors(j, k));
        }
    }
    return out;
}

ComplexMatrix unitary_from_hermitian(const ComplexMatrix& h, double scale) {
    return spectral_map(h, [scale](double lambda) { return std::polar(1.0, scale * lambda); });
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem subsystem) {
    if (m.dim() != 4) throw Error(ErrorKind::BadDimension, "partial_transpose needs a 4x4 matrix");
    ComplexMatrix out(4);
    for (std::size_t a1 = 0; a1 < 2; ++a1)
        for (std::size_t a2 = 0; a2 < 2; ++a2)
            for (std::size_t b1 = 0; b1 < 2; ++b1)
                for (std::size_t b2 = 0; b2 < 2; ++b2) {
                    const Complex z = m(2 * a1 + a2, 2 * b1 + b2);
                    if (subsystem == Subsystem::Second)
                        out(2 * a1 + b2, 2 * b1 + a2) = z;
                    else
                        out(2 * b1 + a2, 2 * a1 + b2) = z;
                }
    return out;
}

}  // namespace tomo
