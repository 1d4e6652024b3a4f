#include "tomo/pulse.hpp"

#include <cmath>
#include <string>

#include "tomo/error.hpp"

namespace tomo {

namespace {

void check_ion(int ion) {
    if (ion != 1 && ion != 2) throw Error(ErrorKind::InvalidArgument, "ion must be 1 or 2");
}

int qubit_value(std::size_t basis, int ion) {
    return ion == 1 ? static_cast<int>(basis >> 1) : static_cast<int>(basis & 1);
}

std::size_t flip(std::size_t basis, int ion) { return basis ^ (ion == 1 ? 2u : 1u); }

// Applies a 2x2 unitary to the qubit of `ion`, identity on the other qubit and the motion.
IonRegisterState apply_qubit_unitary(const IonRegisterState& s, int ion, const ComplexMatrix& u) {
    const std::size_t levels = s.levels();
    ComplexVector out(s.amplitudes().size());
    const auto in = s.amplitudes();
    for (std::size_t basis = 0; basis < 4; ++basis) {
        const int x = qubit_value(basis, ion);
        const std::size_t partner = flip(basis, ion);
        for (std::size_t n = 0; n < levels; ++n) {
            // out[x] = u(x, x) in[x] + u(x, 1 - x) in[1 - x]
            out[basis * levels + n] = u(x, x) * in[basis * levels + n] +
                                      u(x, 1 - x) * in[partner * levels + n];
        }
    }
    return IonRegisterState::from_amplitudes(s.n_max(), std::move(out));
}

ComplexMatrix carrier_generator(double phi) {
    return pauli(1) * Complex(std::cos(phi)) - pauli(2) * Complex(std::sin(phi));
}

IonRegisterState single_carrier(const IonRegisterState& s, int ion, double theta, double phi) {
    if (theta == 0.0) return s;
    return apply_qubit_unitary(s, ion, unitary_from_hermitian(carrier_generator(phi), theta / 2.0));
}

ComplexMatrix sideband_generator(const IonRegisterState& s, int ion, double phi) {
    const std::size_t levels = s.levels();
    ComplexMatrix g(4 * levels);
    const Complex phase = std::polar(1.0, phi);
    for (std::size_t basis = 0; basis < 4; ++basis) {
        if (qubit_value(basis, ion) != 1) continue;
        const std::size_t lowered = flip(basis, ion);
        for (std::size_t n = 0; n + 1 < levels; ++n) {
            // e^{i phi} sigma_+ b^dagger: |1, n> -> sqrt(n+1) |0, n+1>
            const std::size_t from = basis * levels + n;
            const std::size_t to = lowered * levels + n + 1;
            const Complex element = phase * std::sqrt(static_cast<double>(n + 1));
            g(to, from) = element;
            g(from, to) = std::conj(element);
        }
    }
    return g;
}

IonRegisterState single_sideband(const IonRegisterState& s, int ion, double theta, double phi) {
    if (theta == 0.0) return s;
    const ComplexMatrix u = unitary_from_hermitian(sideband_generator(s, ion, phi), theta / 2.0);
    auto out = IonRegisterState::from_amplitudes(s.n_max(), u.apply(s.amplitudes()));
    const double top = out.fock_populations().back();
    if (top > kCutoffGuard) {
        throw Error(ErrorKind::CutoffExceeded, "population " + std::to_string(top) +
                                                   " in Fock level " + std::to_string(s.n_max()));
    }
    return out;
}

void check_crosstalk(double crosstalk) {
    if (!(crosstalk >= 0.0) || crosstalk > 1.0)
        throw Error(ErrorKind::InvalidArgument, "crosstalk must lie in [0, 1]");
}

}  // namespace

IonRegisterState IonRegisterState::ground(int n_max) {
    if (n_max < 1) throw Error(ErrorKind::BadCutoff, "Fock cutoff must be >= 1");
    IonRegisterState s(n_max, ComplexVector(4 * (static_cast<std::size_t>(n_max) + 1)));
    s.amp_[s.index(1, 1, 0)] = 1.0;
    return s;
}

IonRegisterState IonRegisterState::from_amplitudes(int n_max, ComplexVector amp) {
    if (n_max < 1) throw Error(ErrorKind::BadCutoff, "Fock cutoff must be >= 1");
    if (amp.size() != 4 * (static_cast<std::size_t>(n_max) + 1))
        throw Error(ErrorKind::BadDimension, "register amplitude vector has wrong length");
    if (std::abs(norm(amp) - 1.0) > 1e-10)
        throw Error(ErrorKind::InvalidArgument, "register state is not normalized");
    return IonRegisterState(n_max, std::move(amp));
}

std::vector<double> IonRegisterState::fock_populations() const {
    std::vector<double> pops(levels());
    for (std::size_t basis = 0; basis < 4; ++basis)
        for (std::size_t n = 0; n < levels(); ++n) pops[n] += std::norm(amp_[basis * levels() + n]);
    return pops;
}

std::string_view to_string(PulseKind kind) {
    return kind == PulseKind::Carrier ? "carrier" : "blue_sideband";
}

PulseKind parse_pulse_kind(std::string_view text) {
    if (text == "carrier") return PulseKind::Carrier;
    if (text == "blue_sideband") return PulseKind::BlueSideband;
    throw Error(ErrorKind::InvalidArgument, "unknown pulse kind '" + std::string(text) + "'");
}

DecoherenceParams DecoherenceParams::defaults() {
    return {kPaperOmegaBeta, kDefaultGammaCollective, kDefaultGammaDifferential};
}

void DecoherenceParams::validate() const {
    if (!(omega_beta >= 0.0) || !(gamma_collective >= 0.0) || !(gamma_differential >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "decoherence parameters must be non-negative");
}

IonRegisterState carrier_rotation(const IonRegisterState& s, int ion, double theta, double phi,
                                  double crosstalk) {
    check_ion(ion);
    check_crosstalk(crosstalk);
    auto out = single_carrier(s, ion, theta, phi);
    if (crosstalk > 0.0) out = single_carrier(out, 3 - ion, theta * std::sqrt(crosstalk), phi);
    return out;
}

IonRegisterState sideband_rotation(const IonRegisterState& s, int ion, double theta, double phi,
                                   double crosstalk) {
    check_ion(ion);
    check_crosstalk(crosstalk);
    auto out = single_sideband(s, ion, theta, phi);
    if (crosstalk > 0.0) out = single_sideband(out, 3 - ion, theta * std::sqrt(crosstalk), phi);
    return out;
}

IonRegisterState apply_pulse(const IonRegisterState& s, const Pulse& pulse, double crosstalk) {
    if (pulse.theta < 0.0) throw Error(ErrorKind::InvalidArgument, "pulse angle must be >= 0");
    return pulse.kind == PulseKind::Carrier
               ? carrier_rotation(s, pulse.ion, pulse.theta, pulse.phi, crosstalk)
               : sideband_rotation(s, pulse.ion, pulse.theta, pulse.phi, crosstalk);
}

std::vector<Pulse> bell_sequence(BellKind kind) {
    const bool plus = kind == BellKind::PsiPlus || kind == BellKind::PhiPlus;
    std::vector<Pulse> seq = {
        {1, PulseKind::BlueSideband, kPi / 2.0, -kPi / 2.0},
        {2, PulseKind::Carrier, kPi, kPi / 2.0},
        {2, PulseKind::BlueSideband, kPi, plus ? kPi / 2.0 : -kPi / 2.0},
    };
    if (kind == BellKind::PhiPlus || kind == BellKind::PhiMinus)
        seq.push_back({2, PulseKind::Carrier, kPi, 0.0});
    return seq;
}

IonRegisterState run_sequence(IonRegisterState s, std::span<const Pulse> pulses, double crosstalk) {
    for (const auto& pulse : pulses) s = apply_pulse(s, pulse, crosstalk);
    return s;
}

DensityMatrix reduce_to_qubits(const IonRegisterState& s) {
    const std::size_t levels = s.levels();
    const auto amp = s.amplitudes();
    ComplexMatrix rho(4);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            Complex sum = 0.0;
            for (std::size_t n = 0; n < levels; ++n)
                sum += amp[a * levels + n] * std::conj(amp[b * levels + n]);
            rho(a, b) = sum;
        }
    return DensityMatrix(rho);
}

DensityMatrix dephase_evolution(const DensityMatrix& rho, double t, const DecoherenceParams& params) {
    if (t < 0.0) throw Error(ErrorKind::NegativeTime, "evolution time must be >= 0");
    params.validate();
    auto collective = [](std::size_t x) { return static_cast<double>((x >> 1) + (x & 1)); };
    auto differential = [](std::size_t x) {
        return 0.5 * (static_cast<double>(x >> 1) - static_cast<double>(x & 1));
    };
    ComplexMatrix out = rho.matrix();
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            if (a == b) continue;
            const double dc = collective(a) - collective(b);
            const double dd = differential(a) - differential(b);
            const double damping = std::exp(-params.gamma_collective * t * dc * dc -
                                            params.gamma_differential * t * dd * dd);
            out(a, b) *= damping * std::polar(1.0, -params.omega_beta * t * dd);
        }
    return DensityMatrix(out);
}

PreparationPreset preparation_preset(std::string_view name) {
    if (name == "ideal") return {"ideal", 0.0, {}, 0.0};
    if (name == "paper-like") {
        // Addressing crosstalk plus dephasing over an effective 100 us with
        // Gd t = 0.17667 and Gc = Gd / 4, which brings the prepared Psi+ to
        // fidelity 0.910 and damps the Psi and Phi coherences equally.
        constexpr double kDuration = 100e-6;
        constexpr double kGammaDifferential = 0.17667 / kDuration;
        return {"paper-like",
                kPaperCrosstalk,
                {0.0, kGammaDifferential / 4.0, kGammaDifferential},
                kDuration};
    }
    throw Error(ErrorKind::InvalidArgument, "unknown preparation preset '" + std::string(name) + "'");
}

DensityMatrix prepare_bell_state(BellKind kind, const PreparationPreset& preset) {
    const int cutoff = preset.crosstalk > 0.0 ? kCrosstalkFockCutoff : kDefaultFockCutoff;
    const auto pulses = bell_sequence(kind);
    const auto state = run_sequence(new_register(cutoff), pulses, preset.crosstalk);
    return dephase_evolution(reduce_to_qubits(state), preset.duration, preset.noise);
}

}  // namespace tomo
