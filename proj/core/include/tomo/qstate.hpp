#pragma once

// Two-qubit state semantics.
//
// Basis ordering: |x1 x2> has index 2*x1 + x2. The qubit value 1 is the bright
// S_1/2 level and 0 the dark D_5/2 level.
//
// Pauli convention: sigma_x, sigma_y, sigma_z are the textbook matrices written
// in the index order (|0>, |1>), so |0> (dark) is the +1 eigenvector of sigma_z
// and sigma_+ = (sigma_x + i sigma_y)/2 = |0><1| raises S to D. This is the
// representation for which the analysis pulses R(pi/2, pi) and R(pi/2, 3pi/2)
// map sigma_y and sigma_x onto sigma_z (checked in the unit tests).

#include <array>
#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "tomo/matrix.hpp"

namespace tomo {

/// sigma_first (x) sigma_second with 0 = identity, 1 = x, 2 = y, 3 = z.
struct PauliIndex {
    int first = 0;
    int second = 0;

    constexpr PauliIndex() = default;
    PauliIndex(int i, int j);

    constexpr int flat() const noexcept { return 4 * first + second; }
    static PauliIndex from_flat(int k);

    friend constexpr auto operator<=>(const PauliIndex&, const PauliIndex&) = default;
};

/// Coefficients or expectation values keyed by PauliIndex::flat().
using PauliTable = std::array<double, 16>;

enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

inline constexpr std::array<BellKind, 4> kAllBellKinds = {BellKind::PsiPlus, BellKind::PsiMinus,
                                                          BellKind::PhiPlus, BellKind::PhiMinus};

std::string_view to_string(BellKind kind);
/// Accepts "psi+", "psi-", "phi+", "phi-" and the enumerator names.
BellKind parse_bell_kind(std::string_view text);

/// Single-qubit Pauli matrix, k in 0..3.
const ComplexMatrix& pauli(int k);

ComplexVector basis_state(int x1, int x2);
ComplexVector bell_state(BellKind kind);
ComplexMatrix pauli_operator(PauliIndex p);

struct PhysicalityReport {
    bool physical = false;
    double hermiticity_defect = 0.0;
    double trace_error = 0.0;
    double min_eigenvalue = 0.0;
    std::string diagnostics;

    explicit operator bool() const noexcept { return physical; }
};

/// Hermitian within 1e-10, unit trace within 1e-8, min eigenvalue >= -1e-8.
PhysicalityReport is_physical(const ComplexMatrix& m);

/// A physical two-qubit state. Construction validates.
class DensityMatrix {
public:
    /// Throws NotPhysical (with the failing check in the message).
    explicit DensityMatrix(const ComplexMatrix& m);

    static DensityMatrix pure(std::span<const Complex> ket);
    static DensityMatrix maximally_mixed();

    const ComplexMatrix& matrix() const noexcept { return mat_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

private:
    ComplexMatrix mat_;
};

/// lambda_p = tr(rho O_p) / 4. Accepts any 4x4 matrix; real parts are returned.
PauliTable fano_coefficients(const ComplexMatrix& rho);
PauliTable fano_coefficients(const DensityMatrix& rho);

/// sum_p lambda_p O_p. May be non-positive.
ComplexMatrix matrix_from_coefficients(const PauliTable& coeffs);
/// Throws MissingCoefficient unless all 16 indices are present.
ComplexMatrix matrix_from_coefficients(const std::map<PauliIndex, double>& coeffs);

/// <psi|rho|psi>, clamped into [0, 1] when the excursion is below 1e-10.
double fidelity_pure(const DensityMatrix& rho, std::span<const Complex> psi);

}  // namespace tomo
