#pragma once

// Ion register simulation: two qubits times the breathing-mode Fock space.
//
// Carrier pulse on ion a:   R_a(theta, phi)  = exp[i theta/2 (sigma_x cos phi - sigma_y sin phi)]
// Blue sideband on ion a:   R+_a(theta, phi) = exp[i theta/2 (e^{i phi} sigma_+ b^dagger + h.c.)]
//
// with sigma_+ = |0><1|. The sideband generator is the Hermitian completion of
// the carrier's e^{i phi} sigma_+ + e^{-i phi} sigma_- decomposition with the
// phonon creation operator attached to sigma_+, so |1, n> couples to
// |0, n+1> with matrix element e^{i phi} sqrt(n+1). With this convention the
// sequence R+_2(pi, +-pi/2) R_2(pi, pi/2) R+_1(pi/2, -pi/2) takes |11, 0>
// to (|10> +- |01>)/sqrt(2) with the motion back in |0>.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tomo/matrix.hpp"
#include "tomo/qstate.hpp"

namespace tomo {

inline constexpr double kPi = 3.14159265358979323846;

/// Differential Zeeman splitting from the field gradient, rad/s.
inline constexpr double kPaperOmegaBeta = 2.0 * kPi * 170.0;
/// Collective dephasing rate such that Phi+ reaches fidelity 0.75 after 200 us.
inline constexpr double kDefaultGammaCollective = 0.69314718055994530942 / (4.0 * 200e-6);
/// Differential dephasing rate halving the Psi coherence after 5 ms.
inline constexpr double kDefaultGammaDifferential = 0.69314718055994530942 / 5e-3;
/// Intensity leakage onto the non-addressed ion.
inline constexpr double kPaperCrosstalk = 2.5e-3;
inline constexpr int kDefaultFockCutoff = 3;
/// Cutoff used when crosstalk is on: stray sideband pulses on the neighbour
/// populate phonon numbers up to 3 at the 1e-4 level.
inline constexpr int kCrosstalkFockCutoff = 6;
/// Largest population allowed in the top Fock level.
inline constexpr double kCutoffGuard = 1e-8;

class IonRegisterState {
public:
    /// |11> (x) |0_b>. Throws BadCutoff for n_max < 1.
    static IonRegisterState ground(int n_max);
    /// Throws BadDimension / InvalidArgument for wrong length or norm.
    static IonRegisterState from_amplitudes(int n_max, ComplexVector amp);

    int n_max() const noexcept { return n_max_; }
    std::size_t levels() const noexcept { return static_cast<std::size_t>(n_max_) + 1; }
    std::span<const Complex> amplitudes() const noexcept { return amp_; }

    /// Position of |x1 x2> (x) |n>.
    std::size_t index(int x1, int x2, int n) const {
        return static_cast<std::size_t>(2 * x1 + x2) * levels() + static_cast<std::size_t>(n);
    }
    Complex amplitude(int x1, int x2, int n) const { return amp_[index(x1, x2, n)]; }

    std::vector<double> fock_populations() const;

private:
    IonRegisterState(int n_max, ComplexVector amp) : n_max_(n_max), amp_(std::move(amp)) {}

    int n_max_ = 0;
    ComplexVector amp_;
};

inline IonRegisterState new_register(int n_max = kDefaultFockCutoff) {
    return IonRegisterState::ground(n_max);
}

enum class PulseKind { Carrier, BlueSideband };

std::string_view to_string(PulseKind kind);
PulseKind parse_pulse_kind(std::string_view text);

struct Pulse {
    int ion = 1;  // 1 or 2
    PulseKind kind = PulseKind::Carrier;
    double theta = 0.0;
    double phi = 0.0;

    friend bool operator==(const Pulse&, const Pulse&) = default;
};

struct DecoherenceParams {
    double omega_beta = 0.0;          // rad/s
    double gamma_collective = 0.0;    // 1/s
    double gamma_differential = 0.0;  // 1/s

    /// omega_beta = 2pi 170 Hz with the default collective and differential rates.
    static DecoherenceParams defaults();
    void validate() const;
};

/// The addressed ion gets the full pulse; with crosstalk > 0 the neighbour then
/// gets the same pulse at angle theta * sqrt(crosstalk).
IonRegisterState carrier_rotation(const IonRegisterState& s, int ion, double theta, double phi,
                                  double crosstalk = 0.0);
/// Throws CutoffExceeded when the top Fock level ends above kCutoffGuard.
IonRegisterState sideband_rotation(const IonRegisterState& s, int ion, double theta, double phi,
                                   double crosstalk = 0.0);
IonRegisterState apply_pulse(const IonRegisterState& s, const Pulse& pulse, double crosstalk = 0.0);

/// Pulses in application order.
std::vector<Pulse> bell_sequence(BellKind kind);
IonRegisterState run_sequence(IonRegisterState s, std::span<const Pulse> pulses,
                              double crosstalk = 0.0);

/// Partial trace over the phonon mode.
DensityMatrix reduce_to_qubits(const IonRegisterState& s);

/// Pure dephasing in the product basis. Coherence rho_ab picks up
/// exp(-i w t dd) exp(-Gc t dc^2) exp(-Gd t dd^2) where dc = c(a) - c(b) with
/// c(x) = x1 + x2, and dd = d(a) - d(b) with d(x) = (x1 - x2) / 2.
/// Throws NegativeTime for t < 0.
DensityMatrix dephase_evolution(const DensityMatrix& rho, double t, const DecoherenceParams& params);

/// State-preparation error model: crosstalk during the pulse sequence followed
/// by dephasing for `duration` seconds.
struct PreparationPreset {
    std::string name;
    double crosstalk = 0.0;
    DecoherenceParams noise;
    double duration = 0.0;
};

/// "ideal" or "paper-like"; throws InvalidArgument otherwise.
PreparationPreset preparation_preset(std::string_view name);

/// Runs the Bell sequence from |11, 0> under the preset and returns the qubit
/// state after the preparation dephasing.
DensityMatrix prepare_bell_state(BellKind kind, const PreparationPreset& preset);

}  // namespace tomo
