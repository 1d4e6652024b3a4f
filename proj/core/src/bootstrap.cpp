#include "tomo/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "tomo/entangle.hpp"
#include "tomo/error.hpp"
#include "tomo/random.hpp"

namespace tomo {

QuantityStats summarize(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    QuantityStats out;
    out.samples = static_cast<int>(sorted.size());
    if (sorted.empty()) return out;
    double sum = 0.0;
    for (double v : sorted) sum += v;
    out.mean = sum / static_cast<double>(sorted.size());
    if (sorted.size() > 1) {
        double ss = 0.0;
        for (double v : sorted) ss += (v - out.mean) * (v - out.mean);
        out.std = std::sqrt(ss / static_cast<double>(sorted.size() - 1));
    }
    return out;
}

const std::vector<std::string>& bootstrap_quantity_names() {
    static const std::vector<std::string> names = {
        "fidelity", "eof",   "concurrence", "ppt_min_eig", "chsh", "ppt_eig_0",
        "ppt_eig_1", "ppt_eig_2", "ppt_eig_3", "zz",
    };
    return names;
}

std::map<std::string, double> derived_quantities(const DensityMatrix& rho,
                                                 std::span<const Complex> target) {
    const auto report = analyze_entanglement(rho);
    std::map<std::string, double> q;
    q["fidelity"] = fidelity_pure(rho, target);
    q["eof"] = report.eof;
    q["concurrence"] = report.concurrence;
    q["ppt_min_eig"] = report.ppt_min_eig;
    q["chsh"] = report.chsh;
    for (int k = 0; k < 4; ++k) q["ppt_eig_" + std::to_string(k)] = report.ppt_eigenvalues[k];
    q["zz"] = 4.0 * fano_coefficients(rho)[PauliIndex(3, 3).flat()];
    return q;
}

BootstrapReport bootstrap_errors(const DensityMatrix& rho_hat, std::int64_t shots_per_setting,
                                 int trials, std::uint64_t seed, std::span<const Complex> target,
                                 const BootstrapOptions& options) {
    if (trials < 2) throw Error(ErrorKind::InvalidArgument, "bootstrap needs at least 2 trials");
    if (shots_per_setting < 1) throw Error(ErrorKind::InvalidArgument, "shots must be >= 1");
    options.systematics.validate();

    const auto& names = bootstrap_quantity_names();
    std::vector<std::optional<std::vector<double>>> per_trial(static_cast<std::size_t>(trials));

    auto run_trial = [&](int t) {
        try {
            const Dataset data = simulate_dataset(rho_hat, shots_per_setting,
                                                  derive_seed(seed, static_cast<std::uint64_t>(t)),
                                                  options.systematics);
            const MleReport fit = mle_reconstruct(data, options.mle);
            const auto q = derived_quantities(fit.rho, target);
            std::vector<double> row;
            row.reserve(names.size());
            for (const auto& n : names) row.push_back(q.at(n));
            per_trial[static_cast<std::size_t>(t)] = std::move(row);
        } catch (const Error&) {
            per_trial[static_cast<std::size_t>(t)].reset();
        }
    };

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                            : options.threads;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(trials));
    if (threads <= 1) {
        for (int t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::atomic<int> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (int t = next++; t < trials; t = next++) run_trial(t);
            });
    }

    BootstrapReport report;
    report.trials = trials;
    std::vector<std::vector<double>> columns(names.size());
    for (const auto& row : per_trial) {
        if (!row) {
            ++report.failed_trials;
            continue;
        }
        for (std::size_t k = 0; k < names.size(); ++k) columns[k].push_back((*row)[k]);
    }
    if (report.failed_trials * 20 >= trials)
        throw Error(ErrorKind::BootstrapDegenerate,
                    std::to_string(report.failed_trials) + " of " + std::to_string(trials) +
                        " trials failed to reconstruct");
    for (std::size_t k = 0; k < names.size(); ++k) report.quantities[names[k]] = summarize(columns[k]);
    return report;
}

}  // namespace tomo
