#pragma once

#include <array>

#include "tomo/matrix.hpp"
#include "tomo/qstate.hpp"

namespace tomo {

struct ConcurrenceResult {
    double concurrence = 0.0;
    double eof = 0.0;  // entanglement of formation, in ebits
};

/// Wootters' closed form. rho~ = (sy x sy) rho* (sy x sy); the square roots of
/// the eigenvalues of rho rho~ are taken from the Hermitian, similar matrix
/// sqrt(rho) rho~ sqrt(rho).
ConcurrenceResult concurrence_eof(const DensityMatrix& rho);

/// Shannon entropy of a binary distribution, in bits.
double binary_entropy(double p);

struct PptResult {
    double min_eig = 0.0;
    std::array<double, 4> eigenvalues{};  // ascending
};

/// Spectrum of the partial transpose on the second qubit.
PptResult ppt_min_eigenvalue(const DensityMatrix& rho);

/// A = sx (x) s(x-z) + sx (x) s(x+z) + sz (x) s(x-z) - sz (x) s(x+z),
/// s(x+-z) = (sx +- sz) / sqrt(2).
const ComplexMatrix& chsh_operator();
/// |tr(rho A)|
double chsh_value(const DensityMatrix& rho);

struct OverlapPhase {
    double beta_m = 0.0;  // in [0, 2 pi)
    double f_m = 0.0;
    bool phase_undefined = false;  // |rho_{10,01}| < 1e-12; beta_m reported as 0
};

/// Maximises <Psi_b|rho|Psi_b> over Psi_b = (|10> + e^{ib} |01>) / sqrt(2).
OverlapPhase max_overlap_phase(const DensityMatrix& rho);

/// (|10> + e^{i beta} |01>) / sqrt(2)
ComplexVector psi_beta(double beta);

struct EntanglementReport {
    double eof = 0.0;
    double concurrence = 0.0;
    double ppt_min_eig = 0.0;
    std::array<double, 4> ppt_eigenvalues{};
    double chsh = 0.0;
    double beta_m = 0.0;
    double f_m = 0.0;
    bool phase_undefined = false;
};

EntanglementReport analyze_entanglement(const DensityMatrix& rho);

}  // namespace tomo
