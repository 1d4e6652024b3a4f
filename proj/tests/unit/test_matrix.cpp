#include <gtest/gtest.h>

#include <cmath>

#include "support/generators.hpp"
#include "tomo/error.hpp"
#include "tomo/matrix.hpp"
#include "tomo/qstate.hpp"

using namespace tomo;
using tomo::testing::Gen;

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix projector_onto(const EigenSystem& es, double value, double tol = 1e-8) {
    const std::size_t n = es.vectors.dim();
    ComplexMatrix p(n);
    for (std::size_t k = 0; k < es.values.size(); ++k) {
        if (std::abs(es.values[k] - value) > tol) continue;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) p(i, j) += es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    return p;
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
    EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
}

TEST(Kron, SigmaXSigmaZEntries) {
    const ComplexMatrix m = kron(pauli(1), pauli(3));
    ComplexMatrix expected(4);
    expected(0, 2) = 1.0;
    expected(1, 3) = -1.0;
    expected(2, 0) = 1.0;
    expected(3, 1) = -1.0;
    EXPECT_EQ(m, expected);
}

TEST(Kron, ZZOnBasisState01) {
    const auto v = kron(pauli(3), pauli(3)).apply(basis_state(0, 1));
    const auto e = basis_state(0, 1);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(v[i], -e[i]);
}

TEST(Kron, DimensionMismatchOnConstruction) {
    EXPECT_THROW(ComplexMatrix(2, std::vector<Complex>(3)), Error);
}

TEST(Eigh, SigmaZ) {
    const auto es = eigh(pauli(3));
    ASSERT_EQ(es.values.size(), 2u);
    EXPECT_NEAR(es.values[0], -1.0, 1e-14);
    EXPECT_NEAR(es.values[1], 1.0, 1e-14);
}

TEST(Eigh, ZZDegenerateSpectrumAndProjectors) {
    const ComplexMatrix zz = kron(pauli(3), pauli(3));
    const auto es = eigh(zz);
    const std::vector<double> expected = {-1, -1, 1, 1};
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(es.values[k], expected[k], 1e-14);
    // eigenvectors within a cluster are arbitrary; compare projectors
    const ComplexMatrix p_minus = projector_onto(es, -1.0);
    const ComplexMatrix expected_minus =
        ComplexMatrix::projector(basis_state(0, 1)) + ComplexMatrix::projector(basis_state(1, 0));
    EXPECT_LT(p_minus.max_abs_diff(expected_minus), 1e-12);
}

TEST(Eigh, PartialTransposeOfPsiPlus) {
    const auto rho = ComplexMatrix::projector(bell_state(BellKind::PsiPlus));
    const auto values = eigvalsh(partial_transpose(rho, Subsystem::Second));
    const std::vector<double> expected = {-0.5, 0.5, 0.5, 0.5};
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(values[k], expected[k], 1e-12);
}

TEST(Eigh, RejectsNonHermitian) {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    try {
        eigh(m);
        FAIL() << "expected NotHermitian";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
    }
}

TEST(Eigh, ResidualsAndUnitarityOnRandomInputs) {
    Gen gen(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t dim = static_cast<std::size_t>(gen.integer(1, 16));
        const ComplexMatrix h = gen.hermitian(dim, gen.uniform(0.01, 10.0));
        const auto es = eigh(h);
        const double fro = h.frobenius_norm();
        for (std::size_t k = 0; k < dim; ++k) {
            ComplexVector v(dim);
            for (std::size_t i = 0; i < dim; ++i) v[i] = es.vectors(i, k);
            const auto hv = h.apply(v);
            double r = 0.0;
            for (std::size_t i = 0; i < dim; ++i) r += std::norm(hv[i] - es.values[k] * v[i]);
            EXPECT_LE(std::sqrt(r), 1e-10 * fro) << "trial " << trial;
            if (k > 0) EXPECT_LE(es.values[k - 1], es.values[k]);
        }
        const ComplexMatrix vv = es.vectors.adjoint() * es.vectors;
        EXPECT_LT(vv.max_abs_diff(ComplexMatrix::identity(dim)), 1e-10);
    }
}

TEST(UnitaryFromHermitian, HalfPiSigmaXIsISigmaX) {
    const auto u = unitary_from_hermitian(pauli(1), kPi / 2);
    EXPECT_LT(u.max_abs_diff(pauli(1) * Complex(0, 1)), 1e-14);
}

TEST(UnitaryFromHermitian, ZeroScaleIsIdentity) {
    Gen gen(3);
    const auto h = gen.hermitian(6);
    EXPECT_LT(unitary_from_hermitian(h, 0.0).max_abs_diff(ComplexMatrix::identity(6)), 1e-13);
}

TEST(UnitaryFromHermitian, PiSigmaXIsMinusIdentity) {
    const auto u = unitary_from_hermitian(pauli(1), kPi);
    EXPECT_LT(u.max_abs_diff(ComplexMatrix::identity(2) * Complex(-1)), 1e-14);
}

TEST(PartialTranspose, MaximallyMixedIsFixed) {
    const auto m = ComplexMatrix::identity(4) * Complex(0.25);
    EXPECT_EQ(partial_transpose(m, Subsystem::Second), m);
}

TEST(PartialTranspose, WernerMinimumEigenvalue) {
    // (1 - 3p) / 4; values from tests/oracles/derive_expected.py
    const auto psi = ComplexMatrix::projector(bell_state(BellKind::PsiPlus));
    for (const auto& [p, expected] : {std::pair{0.2, 0.10000000000000003}, std::pair{0.7, -0.2749999999999999}}) {
        const auto rho = psi * Complex(p) + ComplexMatrix::identity(4) * Complex((1 - p) / 4);
        EXPECT_NEAR(eigvalsh(partial_transpose(rho, Subsystem::Second))[0], expected, 1e-12);
        EXPECT_NEAR(eigvalsh(partial_transpose(rho, Subsystem::First))[0], expected, 1e-12);
    }
}

TEST(PartialTranspose, RejectsOtherDimensions) {
    try {
        partial_transpose(ComplexMatrix::identity(2), Subsystem::First);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadDimension);
    }
}
