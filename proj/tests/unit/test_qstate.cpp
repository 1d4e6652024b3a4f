#include <gtest/gtest.h>

#include <cmath>

#include "support/generators.hpp"
#include "tomo/error.hpp"
#include "tomo/measure.hpp"
#include "tomo/pulse.hpp"
#include "tomo/qstate.hpp"

using namespace tomo;
using tomo::testing::Gen;

TEST(BellState, PsiPlusAmplitudes) {
    const auto v = bell_state(BellKind::PsiPlus);
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexVector expected{0, s, s, 0};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(v[i] - expected[i]), 0.0, 1e-15);
}

TEST(BellState, PhiMinusAmplitudes) {
    const auto v = bell_state(BellKind::PhiMinus);
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexVector expected{-s, 0, 0, s};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(v[i] - expected[i]), 0.0, 1e-15);
}

TEST(BellState, MutuallyOrthonormal) {
    for (auto a : kAllBellKinds)
        for (auto b : kAllBellKinds) {
            const Complex ip = inner(bell_state(a), bell_state(b));
            EXPECT_NEAR(std::abs(ip), a == b ? 1.0 : 0.0, 1e-15);
        }
}

TEST(BellState, NamesRoundTrip) {
    for (auto k : kAllBellKinds) EXPECT_EQ(parse_bell_kind(to_string(k)), k);
    EXPECT_THROW(parse_bell_kind("psi"), Error);
}

TEST(PauliOperator, IdentityAndZZ) {
    EXPECT_EQ(pauli_operator({0, 0}), ComplexMatrix::identity(4));
    const double d[] = {1, -1, -1, 1};
    EXPECT_EQ(pauli_operator({3, 3}), ComplexMatrix::diagonal(d));
}

TEST(PauliOperator, OrthogonalityAllPairs) {
    for (int p = 0; p < 16; ++p)
        for (int q = 0; q < 16; ++q) {
            const Complex t = (pauli_operator(PauliIndex::from_flat(p)) * pauli_operator(PauliIndex::from_flat(q))).trace();
            EXPECT_EQ(t, Complex(p == q ? 4.0 : 0.0)) << p << "," << q;
        }
}

TEST(PauliIndex, RangeChecked) {
    EXPECT_THROW(PauliIndex(4, 0), Error);
    EXPECT_THROW(PauliIndex(0, -1), Error);
}

TEST(SigmaZConvention, AnalysisPulsesMapOntoSigmaZ) {
    // R(pi/2, pi) sy R^dag = sz and R(pi/2, 3pi/2) sx R^dag = sz
    auto rotation = [](double theta, double phi) {
        const ComplexMatrix g = pauli(1) * Complex(std::cos(phi)) - pauli(2) * Complex(std::sin(phi));
        return unitary_from_hermitian(g, theta / 2);
    };
    const auto ry = rotation(kPi / 2, kPi);
    const auto rx = rotation(kPi / 2, 3 * kPi / 2);
    EXPECT_LT((ry * pauli(2) * ry.adjoint()).max_abs_diff(pauli(3)), 1e-14);
    EXPECT_LT((rx * pauli(1) * rx.adjoint()).max_abs_diff(pauli(3)), 1e-14);
}

TEST(Fano, MaximallyMixed) {
    const auto c = fano_coefficients(DensityMatrix::maximally_mixed());
    EXPECT_DOUBLE_EQ(c[0], 0.25);
    for (int k = 1; k < 16; ++k) EXPECT_DOUBLE_EQ(c[k], 0.0);
}

TEST(Fano, PsiPlus) {
    const auto c = fano_coefficients(DensityMatrix::pure(bell_state(BellKind::PsiPlus)));
    PauliTable expected{};
    expected[PauliIndex(0, 0).flat()] = 0.25;
    expected[PauliIndex(1, 1).flat()] = 0.25;
    expected[PauliIndex(2, 2).flat()] = 0.25;
    expected[PauliIndex(3, 3).flat()] = -0.25;
    for (int k = 0; k < 16; ++k) EXPECT_NEAR(c[k], expected[k], 1e-15) << k;
}

TEST(Fano, BrightBright) {
    // |11> with |1> the -1 eigenvector of sigma_z
    const auto c = fano_coefficients(DensityMatrix::pure(basis_state(1, 1)));
    EXPECT_DOUBLE_EQ(c[PauliIndex(3, 0).flat()], -0.25);
    EXPECT_DOUBLE_EQ(c[PauliIndex(0, 3).flat()], -0.25);
    EXPECT_DOUBLE_EQ(c[PauliIndex(3, 3).flat()], 0.25);
}

TEST(Fano, BellPatternHasThreeQuarterEntries) {
    for (auto k : kAllBellKinds) {
        const auto c = fano_coefficients(DensityMatrix::pure(bell_state(k)));
        int count = 0;
        for (int p = 1; p < 16; ++p) {
            if (std::abs(c[p]) < 1e-14) continue;
            EXPECT_NEAR(std::abs(c[p]), 0.25, 1e-14);
            ++count;
        }
        EXPECT_EQ(count, 3);
    }
}

TEST(MatrixFromCoefficients, IdentityOnly) {
    PauliTable c{};
    c[0] = 0.25;
    EXPECT_LT(matrix_from_coefficients(c).max_abs_diff(ComplexMatrix::identity(4) * Complex(0.25)), 1e-16);
}

TEST(MatrixFromCoefficients, MissingEntryThrows) {
    std::map<PauliIndex, double> c;
    for (int k = 0; k < 15; ++k) c[PauliIndex::from_flat(k)] = 0.0;
    try {
        matrix_from_coefficients(c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MissingCoefficient);
    }
}

TEST(MatrixFromCoefficients, RoundTripPsiPlus) {
    const auto rho = DensityMatrix::pure(bell_state(BellKind::PsiPlus));
    EXPECT_LT(matrix_from_coefficients(fano_coefficients(rho)).max_abs_diff(rho.matrix()), 1e-15);
}

TEST(MatrixFromCoefficients, RoundTripRandomStates) {
    Gen gen(5);
    for (int i = 0; i < 100; ++i) {
        const auto rho = gen.any_density();
        EXPECT_LE((matrix_from_coefficients(fano_coefficients(rho)) - rho.matrix()).frobenius_norm(), 1e-12);
    }
}

TEST(Fidelity, PureAndMixed) {
    const auto psi = bell_state(BellKind::PsiPlus);
    EXPECT_DOUBLE_EQ(fidelity_pure(DensityMatrix::pure(psi), psi), 1.0);
    for (auto k : kAllBellKinds) EXPECT_NEAR(fidelity_pure(DensityMatrix::maximally_mixed(), bell_state(k)), 0.25, 1e-15);
}

TEST(Fidelity, PaperLikePresetIsCalibrated) {
    // oracle: 0.9099985822721772 for the true paper-like Psi+ state
    const auto rho = prepare_bell_state(BellKind::PsiPlus, preparation_preset("paper-like"));
    EXPECT_NEAR(fidelity_pure(rho, bell_state(BellKind::PsiPlus)), 0.9099985822721772, 1e-9);
    EXPECT_NEAR(fidelity_pure(rho, bell_state(BellKind::PsiPlus)), 0.91, 0.02);
}

TEST(Fidelity, RejectsUnnormalizedTarget) {
    EXPECT_THROW(fidelity_pure(DensityMatrix::maximally_mixed(), ComplexVector{1, 1, 0, 0}), Error);
}

TEST(IsPhysical, Examples) {
    EXPECT_TRUE(is_physical(ComplexMatrix::identity(4) * Complex(0.25)));
    const double d[] = {1.2, -0.2, 0, 0};
    const auto report = is_physical(ComplexMatrix::diagonal(d));
    EXPECT_FALSE(report);
    EXPECT_NEAR(report.min_eigenvalue, -0.2, 1e-14);
    EXPECT_FALSE(report.diagnostics.empty());
}

TEST(IsPhysical, RawLinearInversionSometimesFails) {
    // 200-shot linear inversion of a pure state is non-positive for many seeds
    const auto rho = DensityMatrix::pure(bell_state(BellKind::PsiPlus));
    int unphysical = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto data = simulate_dataset(rho, 200, seed);
        PauliTable est = estimate_expectations(data);
        for (auto& v : est) v /= 4.0;
        if (!is_physical(matrix_from_coefficients(est))) ++unphysical;
    }
    EXPECT_GT(unphysical, 0);
}

TEST(DensityMatrix, ConstructorValidates) {
    const double d[] = {1.2, -0.2, 0, 0};
    try {
        DensityMatrix bad(ComplexMatrix::diagonal(d));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotPhysical);
    }
}
