#pragma once

// The nine analysis settings, Born-rule outcome probabilities, shot sampling
// and expectation-value estimation.
//
// Outcome k = 2*x1 + x2 is labelled "x1x2"; a fluorescing (bright, S) ion reads
// 1 and a dark ion reads 0. Since |0> is the +1 eigenvector of sigma_z, a
// detected 0 contributes +1 to <sigma_z> and a detected 1 contributes -1.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tomo/matrix.hpp"
#include "tomo/qstate.hpp"

namespace tomo {

inline constexpr int kSettingCount = 9;
inline constexpr std::int64_t kDefaultShots = 200;

inline constexpr std::array<std::string_view, 4> kOutcomeLabels = {"00", "01", "10", "11"};

/// Carrier rotation R(theta, phi) applied to one ion before detection.
struct AnalysisPulse {
    double theta = 0.0;
    double phi = 0.0;

    friend bool operator==(const AnalysisPulse&, const AnalysisPulse&) = default;
};

struct MeasurementSetting {
    int id = 0;
    std::optional<AnalysisPulse> rot1;
    std::optional<AnalysisPulse> rot2;
    /// Observables whose values equal <sigma_z^(1)>, <sigma_z^(2)> and
    /// <sigma_z (x) sigma_z> measured after the rotations, in that order.
    std::array<PauliIndex, 3> measured;
    /// Which of `measured` enter the reconstruction.
    std::array<bool, 3> bold{};

    std::vector<PauliIndex> bold_observables() const;
};

const std::vector<MeasurementSetting>& settings_table();
/// Throws InvalidArgument for ids outside 1..9.
const MeasurementSetting& setting_by_id(int id);

/// Optional systematic errors in the analysis step. All default to off.
struct MeasurementSystematics {
    double crosstalk = 0.0;         // intensity leakage of analysis pulses to the neighbour
    double angle_error = 0.0;       // fractional pulse-area error, theta -> theta (1 + e)
    double readout_flip = 0.0;      // per-ion probability that the detected bit flips

    void validate() const;
};

/// The local unitary applied before detection.
ComplexMatrix setting_unitary(const MeasurementSetting& setting,
                              const MeasurementSystematics& sys = {});

/// Effects E_k = U^dagger |k><k| U, so p_k = tr(rho E_k) without readout errors.
std::array<ComplexMatrix, 4> outcome_operators(const MeasurementSetting& setting,
                                               const MeasurementSystematics& sys = {});

using OutcomeProbabilities = std::array<double, 4>;

OutcomeProbabilities outcome_probabilities(const DensityMatrix& rho,
                                           const MeasurementSetting& setting,
                                           const MeasurementSystematics& sys = {});

/// Outcome counts for one setting. Counts are stored as doubles so that
/// exact-statistics records (fractional counts) share the type; sampled
/// records always hold integers.
struct CountsRecord {
    int setting_id = 0;
    std::array<double, 4> counts{};

    double shots() const noexcept { return counts[0] + counts[1] + counts[2] + counts[3]; }

    friend bool operator==(const CountsRecord&, const CountsRecord&) = default;
};

using Dataset = std::vector<CountsRecord>;

/// Multinomial draw by inverse CDF, one uniform per shot. Deterministic in seed.
CountsRecord sample_counts(const DensityMatrix& rho, const MeasurementSetting& setting,
                           std::int64_t shots, std::uint64_t seed,
                           const MeasurementSystematics& sys = {});

/// counts = shots * p, not rounded.
CountsRecord exact_counts(const DensityMatrix& rho, const MeasurementSetting& setting,
                          double shots, const MeasurementSystematics& sys = {});

/// All nine settings; setting i draws with derive_seed(seed, i).
Dataset simulate_dataset(const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed,
                         const MeasurementSystematics& sys = {});
Dataset exact_dataset(const DensityMatrix& rho, double shots);

/// The three signed averages measured in one setting.
struct SettingEstimates {
    int setting_id = 0;
    double z1 = 0.0;
    double z2 = 0.0;
    double zz = 0.0;
};

SettingEstimates setting_estimates(const CountsRecord& record);

/// Throws IncompleteSettings / DuplicateSetting unless each of the nine
/// settings appears exactly once with a positive shot count.
void check_complete(std::span<const CountsRecord> records);

/// The 15 bold-face expectation values plus <I (x) I> = 1.
PauliTable estimate_expectations(std::span<const CountsRecord> records);

}  // namespace tomo
