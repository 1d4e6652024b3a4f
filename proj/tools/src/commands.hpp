#pragma once

// The four verbs of the command-line tool, as plain functions over in-memory
// data. main.cpp handles flags, files and exit codes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tomo/bootstrap.hpp"
#include "tomo/entangle.hpp"
#include "tomo/io.hpp"
#include "tomo/measure.hpp"
#include "tomo/pulse.hpp"
#include "tomo/qstate.hpp"
#include "tomo/recon.hpp"

namespace tomo::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,       // unexpected internal error
    kExitValidation = 2,    // bad flags, config or input data
    kExitIo = 3,            // unreadable or unwritable file
    kExitNotConverged = 4,  // MLE hit the iteration cap; result still written
};

struct ExperimentConfig {
    BellKind bell_kind = BellKind::PsiPlus;
    std::int64_t shots = kDefaultShots;
    std::uint64_t seed = 1;
    /// Preparation error model, see preparation_preset().
    std::string preset = "ideal";
    /// Overrides the preset's crosstalk when set.
    std::optional<double> crosstalk;
    /// Dephasing during the hold time before tomography.
    DecoherenceParams noise = DecoherenceParams::defaults();
    double hold_time = 0.0;

    /// Throws InvalidArgument.
    void validate() const;
    PreparationPreset preparation() const;
};

/// Keys: bell, shots, seed, preset, crosstalk, hold_time, and noise with
/// omega_beta, gamma_collective, gamma_differential. Missing keys keep the
/// values of `base`; unknown keys throw MalformedInput.
ExperimentConfig config_from_json(const io::Json& j, ExperimentConfig base = {});
io::Json config_to_json(const ExperimentConfig& config);

/// The state handed to the tomography step: Bell preparation under the
/// preset, then dephasing for hold_time.
DensityMatrix prepared_state(const ExperimentConfig& config);

struct SimulateOutput {
    DensityMatrix true_rho;
    std::vector<Pulse> pulses;
    Dataset dataset;
};

SimulateOutput cmd_simulate(const ExperimentConfig& config);

struct ReconstructOutput {
    MleReport mle;
    double shots_per_setting = 0.0;
};

ReconstructOutput cmd_reconstruct(const Dataset& dataset, const MleOptions& options = {});
io::Json result_to_json(const ReconstructOutput& result);

/// Reads back what result_to_json wrote; only "rho" is required.
struct ResultFile {
    DensityMatrix rho;
    double shots_per_setting = 0.0;
};
ResultFile result_from_json(const io::Json& j);

struct AnalyzeOptions {
    BellKind target = BellKind::PsiPlus;
    int bootstrap_trials = 0;       // 0 = no bootstrap
    std::int64_t shots = 0;         // 0 = take shots_per_setting from the result
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct AnalyzeOutput {
    double fidelity = 0.0;
    EntanglementReport entanglement;
    std::optional<BootstrapReport> bootstrap;
};

AnalyzeOutput cmd_analyze(const ResultFile& result, const AnalyzeOptions& options);
io::Json analysis_to_json(const AnalyzeOutput& out, BellKind target);
/// Human-readable summary, "value(err)" when bootstrap errors are present.
std::string analysis_to_text(const AnalyzeOutput& out, BellKind target);

struct DecayRow {
    double t = 0.0;
    double beta_m = 0.0;  // unwrapped across rows
    double f_m = 0.0;
    double fidelity_beta_l = 0.0;
    double eof = 0.0;
    double ppt_min_eig = 0.0;
    bool converged = true;
    DensityMatrix rho = DensityMatrix::maximally_mixed();
};

/// Reference state at time t: for Psi kinds (|10> + e^{i beta_L} |01>)/sqrt(2)
/// with beta_L = beta_0 + omega_beta t, for Phi kinds the Bell state itself.
ComplexVector decay_reference(BellKind kind, double omega_beta, double t);

/// Times must be non-empty, non-negative and ascending. Time point i is sampled
/// with derive_seed(config.seed, i); hold_time is ignored.
std::vector<DecayRow> cmd_decay_scan(const ExperimentConfig& config, const std::vector<double>& times,
                                     unsigned threads = 1);
std::string decay_table_csv(const std::vector<DecayRow>& rows);

/// Adds the multiple of 2 pi to `wrapped` that lands closest to `previous`.
double unwrap_phase(double previous, double wrapped);

/// "a,b,c" or "start:stop:count" (inclusive, evenly spaced).
std::vector<double> parse_times(const std::string& text);

}  // namespace tomo::cli
