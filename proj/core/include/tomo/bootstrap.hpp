#pragma once

// Parametric bootstrap: counts are resampled from the reconstructed state, each
// synthetic dataset is pushed through the full reconstruction, and the spread
// of the derived quantities is the error estimate.
//
// Trial t draws its dataset with derive_seed(seed, t), and per-quantity
// statistics are computed over the sorted samples, so reports are bit-identical
// for a given seed regardless of thread count or trial order.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tomo/measure.hpp"
#include "tomo/qstate.hpp"
#include "tomo/recon.hpp"

namespace tomo {

struct QuantityStats {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation (n - 1)
    int samples = 0;
};

/// Mean and sample standard deviation. Order of `values` does not matter.
QuantityStats summarize(std::span<const double> values);

struct BootstrapReport {
    std::map<std::string, QuantityStats> quantities;
    int trials = 0;
    int failed_trials = 0;

    const QuantityStats& at(const std::string& name) const { return quantities.at(name); }
};

struct BootstrapOptions {
    MeasurementSystematics systematics;  // applied when simulating trial data
    MleOptions mle;
    unsigned threads = 1;                // 0 = hardware concurrency
};

/// Names of the reported quantities, in report order.
const std::vector<std::string>& bootstrap_quantity_names();

/// Throws InvalidArgument for trials < 2 or shots < 1, and BootstrapDegenerate
/// when 5% or more of the trials fail to reconstruct.
BootstrapReport bootstrap_errors(const DensityMatrix& rho_hat, std::int64_t shots_per_setting,
                                 int trials, std::uint64_t seed, std::span<const Complex> target,
                                 const BootstrapOptions& options = {});

/// Per-trial values of every quantity for one reconstructed state.
std::map<std::string, double> derived_quantities(const DensityMatrix& rho,
                                                 std::span<const Complex> target);

}  // namespace tomo
