#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "tomo/error.hpp"

namespace {

using namespace tomo;
using namespace tomo::cli;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("failed writing '" + path + "'");
}

struct ConfigFlags {
    std::string config_path;
    std::optional<std::string> bell;
    std::optional<std::int64_t> shots;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> preset;
    std::optional<double> crosstalk;
    std::optional<double> hold_time;
    std::optional<double> omega_beta;
    std::optional<double> gamma_c;
    std::optional<double> gamma_d;

    void attach(CLI::App& cmd, bool with_time) {
        cmd.add_option("--config", config_path, "JSON experiment config; flags override it");
        cmd.add_option("--bell", bell, "psi+, psi-, phi+ or phi-");
        cmd.add_option("--shots", shots, "shots per setting (default 200)");
        cmd.add_option("--seed", seed, "master seed");
        cmd.add_option("--preset", preset, "preparation preset: ideal or paper-like");
        cmd.add_option("--crosstalk", crosstalk, "addressing crosstalk (intensity), overrides the preset");
        if (with_time) cmd.add_option("--time", hold_time, "hold time before tomography, seconds");
        cmd.add_option("--omega-beta", omega_beta, "differential Zeeman splitting, rad/s");
        cmd.add_option("--gamma-c", gamma_c, "collective dephasing rate, 1/s");
        cmd.add_option("--gamma-d", gamma_d, "differential dephasing rate, 1/s");
    }

    ExperimentConfig resolve() const {
        ExperimentConfig c;
        if (!config_path.empty()) c = config_from_json(io::parse(read_file(config_path)));
        if (bell) c.bell_kind = parse_bell_kind(*bell);
        if (shots) c.shots = *shots;
        if (seed) c.seed = *seed;
        if (preset) c.preset = *preset;
        if (crosstalk) c.crosstalk = *crosstalk;
        if (hold_time) c.hold_time = *hold_time;
        if (omega_beta) c.noise.omega_beta = *omega_beta;
        if (gamma_c) c.noise.gamma_collective = *gamma_c;
        if (gamma_d) c.noise.gamma_differential = *gamma_d;
        c.validate();
        return c;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit Bell-state tomography: simulate, reconstruct, analyze, decay-scan"};
    app.require_subcommand(1);

    ConfigFlags sim_flags;
    std::string sim_out;
    auto* simulate = app.add_subcommand("simulate", "prepare a Bell state and sample the nine settings");
    sim_flags.attach(*simulate, true);
    simulate->add_option("--out", sim_out, "dataset JSON path (default stdout)");

    std::string rec_in, rec_out, rec_csv;
    auto* reconstruct = app.add_subcommand("reconstruct", "maximum-likelihood reconstruction of a dataset");
    reconstruct->add_option("dataset", rec_in, "dataset JSON")->required();
    reconstruct->add_option("--out", rec_out, "result JSON path (default stdout)");
    reconstruct->add_option("--csv", rec_csv, "also write rho as row,col,re,im CSV");

    std::string an_in, an_out, an_bell = "psi+";
    int an_trials = 0;
    std::int64_t an_shots = 0;
    std::uint64_t an_seed = 1;
    unsigned an_threads = 1;
    auto* analyze = app.add_subcommand("analyze", "entanglement measures of a reconstructed state");
    analyze->add_option("result", an_in, "result JSON from reconstruct")->required();
    analyze->add_option("--bell", an_bell, "fidelity target")->capture_default_str();
    analyze->add_option("--bootstrap", an_trials, "bootstrap trials (0 = off)")->check(CLI::NonNegativeNumber);
    analyze->add_option("--shots", an_shots, "bootstrap shots per setting (default: from the result)");
    analyze->add_option("--seed", an_seed, "bootstrap seed");
    analyze->add_option("--threads", an_threads, "bootstrap worker threads (0 = all cores)");
    analyze->add_option("--out", an_out, "report JSON path");

    ConfigFlags scan_flags;
    std::string scan_times, scan_out;
    unsigned scan_threads = 1;
    auto* scan = app.add_subcommand("decay-scan", "tomography after a series of hold times");
    scan_flags.attach(*scan, false);
    scan->add_option("--times", scan_times, "comma list or start:stop:count, seconds")->required();
    scan->add_option("--threads", scan_threads, "worker threads (0 = all cores)");
    scan->add_option("--out", scan_out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*simulate) {
            const auto config = sim_flags.resolve();
            const auto out = cmd_simulate(config);
            write_output(sim_out, io::dump(io::dataset_to_json(out.dataset)) + "\n");
            io::Json info{{"config", config_to_json(config)},
                          {"pulses", io::pulses_to_json(out.pulses)},
                          {"true_rho", io::matrix_to_json(out.true_rho.matrix())}};
            (sim_out.empty() ? std::cerr : std::cout) << io::dump(info) << "\n";
            return kExitOk;
        }
        if (*reconstruct) {
            const Dataset data = io::dataset_from_json(io::parse(read_file(rec_in)));
            const auto result = cmd_reconstruct(data);
            write_output(rec_out, io::dump(result_to_json(result)) + "\n");
            if (!rec_csv.empty()) write_output(rec_csv, io::matrix_to_csv(result.mle.rho.matrix()));
            if (!result.mle.converged) {
                std::cerr << "warning: reconstruction did not converge after " << result.mle.iterations
                          << " iterations; result written anyway\n";
                return kExitNotConverged;
            }
            return kExitOk;
        }
        if (*analyze) {
            AnalyzeOptions options;
            options.target = parse_bell_kind(an_bell);
            options.bootstrap_trials = an_trials;
            options.shots = an_shots;
            options.seed = an_seed;
            options.threads = an_threads;
            if (an_trials == 1) throw Error(ErrorKind::InvalidArgument, "bootstrap needs at least 2 trials");
            const ResultFile result = result_from_json(io::parse(read_file(an_in)));
            const auto out = cmd_analyze(result, options);
            std::cout << analysis_to_text(out, options.target);
            if (!an_out.empty()) write_output(an_out, io::dump(analysis_to_json(out, options.target)) + "\n");
            return kExitOk;
        }
        if (*scan) {
            const auto config = scan_flags.resolve();
            const auto rows = cmd_decay_scan(config, parse_times(scan_times), scan_threads);
            write_output(scan_out, decay_table_csv(rows));
            for (const auto& r : rows)
                if (!r.converged) {
                    std::cerr << "warning: reconstruction at t = " << r.t << " did not converge\n";
                    return kExitNotConverged;
                }
            return kExitOk;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
