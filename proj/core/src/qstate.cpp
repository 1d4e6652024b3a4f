#include "tomo/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tomo/error.hpp"

namespace tomo {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

const std::array<ComplexMatrix, 4>& pauli_set() {
    using namespace std::complex_literals;
    static const std::array<ComplexMatrix, 4> set = {
        ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}},
        ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
        ComplexMatrix{{0.0, -1.0i}, {1.0i, 0.0}},
        ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
    };
    return set;
}

const std::array<ComplexMatrix, 16>& two_qubit_paulis() {
    static const std::array<ComplexMatrix, 16> ops = [] {
        std::array<ComplexMatrix, 16> out;
        for (int k = 0; k < 16; ++k) out[k] = kron(pauli_set()[k / 4], pauli_set()[k % 4]);
        return out;
    }();
    return ops;
}

}  // namespace

PauliIndex::PauliIndex(int i, int j) : first(i), second(j) {
    if (i < 0 || i > 3 || j < 0 || j > 3)
        throw Error(ErrorKind::InvalidArgument, "Pauli index out of range");
}

PauliIndex PauliIndex::from_flat(int k) {
    if (k < 0 || k > 15) throw Error(ErrorKind::InvalidArgument, "flat Pauli index out of range");
    return PauliIndex(k / 4, k % 4);
}

std::string_view to_string(BellKind kind) {
    switch (kind) {
        case BellKind::PsiPlus: return "psi+";
        case BellKind::PsiMinus: return "psi-";
        case BellKind::PhiPlus: return "phi+";
        case BellKind::PhiMinus: return "phi-";
    }
    return "?";
}

BellKind parse_bell_kind(std::string_view text) {
    if (text == "psi+" || text == "PsiPlus") return BellKind::PsiPlus;
    if (text == "psi-" || text == "PsiMinus") return BellKind::PsiMinus;
    if (text == "phi+" || text == "PhiPlus") return BellKind::PhiPlus;
    if (text == "phi-" || text == "PhiMinus") return BellKind::PhiMinus;
    throw Error(ErrorKind::InvalidArgument, "unknown Bell state '" + std::string(text) + "'");
}

const ComplexMatrix& pauli(int k) {
    if (k < 0 || k > 3) throw Error(ErrorKind::InvalidArgument, "Pauli index out of range");
    return pauli_set()[k];
}

ComplexVector basis_state(int x1, int x2) {
    ComplexVector v(4);
    v.at(2 * x1 + x2) = 1.0;
    return v;
}

ComplexVector bell_state(BellKind kind) {
    const double s = kInvSqrt2;
    switch (kind) {
        case BellKind::PsiPlus: return {0.0, s, s, 0.0};
        case BellKind::PsiMinus: return {0.0, -s, s, 0.0};
        case BellKind::PhiPlus: return {s, 0.0, 0.0, s};
        case BellKind::PhiMinus: return {-s, 0.0, 0.0, s};
    }
    return {};
}

ComplexMatrix pauli_operator(PauliIndex p) { return two_qubit_paulis()[p.flat()]; }

PhysicalityReport is_physical(const ComplexMatrix& m) {
    PhysicalityReport r;
    if (m.dim() != 4) {
        r.diagnostics = "dimension " + std::to_string(m.dim()) + " != 4";
        return r;
    }
    r.hermiticity_defect = m.hermiticity_defect();
    r.trace_error = std::abs(m.trace() - Complex(1.0));
    std::ostringstream why;
    bool ok = true;
    if (r.hermiticity_defect > 1e-10) {
        ok = false;
        why << "not Hermitian (defect " << r.hermiticity_defect << "); ";
    } else {
        r.min_eigenvalue = eigvalsh(m).front();
        if (r.min_eigenvalue < -1e-8) {
            ok = false;
            why << "negative eigenvalue " << r.min_eigenvalue << "; ";
        }
    }
    if (r.trace_error > 1e-8) {
        ok = false;
        why << "trace off by " << r.trace_error << "; ";
    }
    r.physical = ok;
    r.diagnostics = why.str();
    return r;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
    const auto report = is_physical(m);
    if (!report) throw Error(ErrorKind::NotPhysical, report.diagnostics);
    mat_ = m.hermitian_part();
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> ket) {
    return DensityMatrix(ComplexMatrix::projector(ket));
}

DensityMatrix DensityMatrix::maximally_mixed() {
    return DensityMatrix(ComplexMatrix::identity(4) * Complex(0.25));
}

PauliTable fano_coefficients(const ComplexMatrix& rho) {
    if (rho.dim() != 4) throw Error(ErrorKind::BadDimension, "fano_coefficients needs 4x4");
    PauliTable out{};
    const auto& ops = two_qubit_paulis();
    for (int k = 0; k < 16; ++k) {
        // tr(rho O) = sum_ij rho_ij O_ji
        Complex t = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) t += rho(i, j) * ops[k](j, i);
        out[k] = t.real() / 4.0;
    }
    return out;
}

PauliTable fano_coefficients(const DensityMatrix& rho) { return fano_coefficients(rho.matrix()); }

ComplexMatrix matrix_from_coefficients(const PauliTable& coeffs) {
    ComplexMatrix m(4);
    const auto& ops = two_qubit_paulis();
    for (int k = 0; k < 16; ++k) {
        if (coeffs[k] == 0.0) continue;
        m += ops[k] * Complex(coeffs[k]);
    }
    return m;
}

ComplexMatrix matrix_from_coefficients(const std::map<PauliIndex, double>& coeffs) {
    PauliTable table{};
    for (int k = 0; k < 16; ++k) {
        const auto it = coeffs.find(PauliIndex::from_flat(k));
        if (it == coeffs.end()) {
            const auto p = PauliIndex::from_flat(k);
            throw Error(ErrorKind::MissingCoefficient, "no coefficient for (" +
                                                           std::to_string(p.first) + "," +
                                                           std::to_string(p.second) + ")");
        }
        table[k] = it->second;
    }
    return matrix_from_coefficients(table);
}

double fidelity_pure(const DensityMatrix& rho, std::span<const Complex> psi) {
    if (psi.size() != 4) throw Error(ErrorKind::BadDimension, "fidelity_pure needs a 4-vector");
    if (std::abs(norm(psi) - 1.0) > 1e-8)
        throw Error(ErrorKind::InvalidArgument, "fidelity_pure: target not normalized");
    const auto rho_psi = rho.matrix().apply(psi);
    const double f = inner(psi, rho_psi).real();
    if (f < -1e-10 || f > 1.0 + 1e-10)
        throw Error(ErrorKind::NotPhysical, "fidelity " + std::to_string(f) + " outside [0, 1]");
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace tomo
