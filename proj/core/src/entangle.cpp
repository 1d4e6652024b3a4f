#include "tomo/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tomo/error.hpp"
#include "tomo/pulse.hpp"

namespace tomo {

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

ConcurrenceResult concurrence_eof(const DensityMatrix& rho) {
    const ComplexMatrix yy = kron(pauli(2), pauli(2));
    const ComplexMatrix flipped = yy * rho.matrix().conj() * yy;
    const ComplexMatrix root =
        spectral_map(rho.matrix(), [](double x) { return Complex(std::sqrt(std::max(x, 0.0))); });
    const ComplexMatrix r = (root * flipped * root).hermitian_part();

    std::vector<double> eig = eigvalsh(r);
    std::vector<double> lambda;
    for (double v : eig) {
        if (v < -1e-10)
            throw Error(ErrorKind::NotPhysical,
                        "rho rho~ has eigenvalue " + std::to_string(v) + " below roundoff");
        lambda.push_back(std::sqrt(std::max(v, 0.0)));
    }
    std::sort(lambda.rbegin(), lambda.rend());
    const double c = std::clamp(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0, 1.0);
    const double e = c == 0.0 ? 0.0 : binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
    return {c, c >= 1.0 ? 1.0 : e};
}

PptResult ppt_min_eigenvalue(const DensityMatrix& rho) {
    const auto eig = eigvalsh(partial_transpose(rho.matrix(), Subsystem::Second));
    PptResult out;
    std::copy(eig.begin(), eig.end(), out.eigenvalues.begin());
    out.min_eig = out.eigenvalues[0];
    return out;
}

const ComplexMatrix& chsh_operator() {
    static const ComplexMatrix a = [] {
        const double s = 1.0 / std::sqrt(2.0);
        const ComplexMatrix& sx = pauli(1);
        const ComplexMatrix& sz = pauli(3);
        const ComplexMatrix x_minus_z = (sx - sz) * Complex(s);
        const ComplexMatrix x_plus_z = (sx + sz) * Complex(s);
        return kron(sx, x_minus_z) + kron(sx, x_plus_z) + kron(sz, x_minus_z) - kron(sz, x_plus_z);
    }();
    return a;
}

double chsh_value(const DensityMatrix& rho) {
    return std::abs((rho.matrix() * chsh_operator()).trace().real());
}

ComplexVector psi_beta(double beta) {
    const double s = 1.0 / std::sqrt(2.0);
    return {0.0, std::polar(s, beta), s, 0.0};
}

OverlapPhase max_overlap_phase(const DensityMatrix& rho) {
    // F(b) = (rho_10,10 + rho_01,01)/2 + |rho_10,01| cos(b + arg rho_10,01)
    const Complex coherence = rho(2, 1);
    const double populations = 0.5 * (rho(2, 2).real() + rho(1, 1).real());
    OverlapPhase out;
    out.f_m = std::clamp(populations + std::abs(coherence), 0.0, 1.0);
    if (std::abs(coherence) < 1e-12) {
        out.phase_undefined = true;
        return out;
    }
    double beta = -std::arg(coherence);
    beta = std::fmod(beta, 2.0 * kPi);
    if (beta < 0.0) beta += 2.0 * kPi;
    if (beta >= 2.0 * kPi) beta = 0.0;
    out.beta_m = beta;
    return out;
}

EntanglementReport analyze_entanglement(const DensityMatrix& rho) {
    const auto ce = concurrence_eof(rho);
    const auto ppt = ppt_min_eigenvalue(rho);
    const auto phase = max_overlap_phase(rho);
    return {ce.eof,   ce.concurrence, ppt.min_eig,  ppt.eigenvalues,
            chsh_value(rho), phase.beta_m, phase.f_m, phase.phase_undefined};
}

}  // namespace tomo
