#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include "tomo/error.hpp"
#include "tomo/random.hpp"

namespace tomo::cli {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }
[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedInput, what); }

double get_number(const io::Json& j, const std::string& key) {
    if (!j.at(key).is_number()) malformed("config key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n && !failed; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        if (!failed.exchange(true)) failure = std::current_exception();
                    }
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
}

std::string fixed(double v, int decimals) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(decimals) << v;
    return out.str();
}

}  // namespace

void ExperimentConfig::validate() const {
    if (shots < 1) invalid("shots must be >= 1");
    if (crosstalk && !(*crosstalk >= 0.0 && *crosstalk <= 1.0)) invalid("crosstalk must lie in [0, 1]");
    if (!(hold_time >= 0.0)) invalid("hold time must be >= 0");
    noise.validate();
    preparation_preset(preset);
}

PreparationPreset ExperimentConfig::preparation() const {
    PreparationPreset p = preparation_preset(preset);
    if (crosstalk) p.crosstalk = *crosstalk;
    return p;
}

ExperimentConfig config_from_json(const io::Json& j, ExperimentConfig base) {
    if (!j.is_object()) malformed("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "bell") {
            if (!it->is_string()) malformed("config key 'bell' must be a string");
            base.bell_kind = parse_bell_kind(it->get<std::string>());
        } else if (key == "shots") {
            if (!it->is_number_integer()) malformed("config key 'shots' must be an integer");
            base.shots = it->get<std::int64_t>();
        } else if (key == "seed") {
            if (!it->is_number_unsigned()) malformed("config key 'seed' must be a non-negative integer");
            base.seed = it->get<std::uint64_t>();
        } else if (key == "preset") {
            if (!it->is_string()) malformed("config key 'preset' must be a string");
            base.preset = it->get<std::string>();
        } else if (key == "crosstalk") {
            base.crosstalk = get_number(j, key);
        } else if (key == "hold_time") {
            base.hold_time = get_number(j, key);
        } else if (key == "noise") {
            if (!it->is_object()) malformed("config key 'noise' must be an object");
            for (auto n = it->begin(); n != it->end(); ++n) {
                if (n.key() == "omega_beta") base.noise.omega_beta = get_number(*it, n.key());
                else if (n.key() == "gamma_collective") base.noise.gamma_collective = get_number(*it, n.key());
                else if (n.key() == "gamma_differential") base.noise.gamma_differential = get_number(*it, n.key());
                else malformed("unknown noise key '" + n.key() + "'");
            }
        } else {
            malformed("unknown config key '" + key + "'");
        }
    }
    return base;
}

io::Json config_to_json(const ExperimentConfig& c) {
    io::Json j{{"bell", std::string(to_string(c.bell_kind))},
               {"shots", c.shots},
               {"seed", c.seed},
               {"preset", c.preset},
               {"hold_time", c.hold_time},
               {"noise",
                {{"omega_beta", c.noise.omega_beta},
                 {"gamma_collective", c.noise.gamma_collective},
                 {"gamma_differential", c.noise.gamma_differential}}}};
    if (c.crosstalk) j["crosstalk"] = *c.crosstalk;
    return j;
}

DensityMatrix prepared_state(const ExperimentConfig& config) {
    config.validate();
    const DensityMatrix rho = prepare_bell_state(config.bell_kind, config.preparation());
    return dephase_evolution(rho, config.hold_time, config.noise);
}

SimulateOutput cmd_simulate(const ExperimentConfig& config) {
    DensityMatrix rho = prepared_state(config);
    Dataset data = simulate_dataset(rho, config.shots, config.seed);
    return {std::move(rho), bell_sequence(config.bell_kind), std::move(data)};
}

ReconstructOutput cmd_reconstruct(const Dataset& dataset, const MleOptions& options) {
    check_complete(dataset);
    double shots = 0.0;
    for (const auto& r : dataset) shots = std::max(shots, r.shots());
    return {mle_reconstruct(dataset, options), shots};
}

io::Json result_to_json(const ReconstructOutput& result) {
    const auto& m = result.mle;
    return io::Json{{"rho", io::matrix_to_json(m.rho.matrix())},
                    {"log_likelihood", m.log_likelihood},
                    {"iterations", m.iterations},
                    {"converged", m.converged},
                    {"shots_per_setting", result.shots_per_setting},
                    {"initial_point", io::matrix_to_json(m.initial_point.matrix())},
                    {"linear_inversion", io::matrix_to_json(m.linear_inversion)}};
}

ResultFile result_from_json(const io::Json& j) {
    if (!j.is_object() || !j.contains("rho")) malformed("result file needs a 'rho' entry");
    const ComplexMatrix m = io::matrix_from_json(j.at("rho"));
    if (m.dim() != 4) malformed("'rho' must be 4x4");
    ResultFile out{DensityMatrix(m), 0.0};
    if (j.contains("shots_per_setting")) {
        if (!j.at("shots_per_setting").is_number()) malformed("'shots_per_setting' must be a number");
        out.shots_per_setting = j.at("shots_per_setting").get<double>();
    }
    return out;
}

AnalyzeOutput cmd_analyze(const ResultFile& result, const AnalyzeOptions& options) {
    const ComplexVector target = bell_state(options.target);
    AnalyzeOutput out;
    out.fidelity = fidelity_pure(result.rho, target);
    out.entanglement = analyze_entanglement(result.rho);
    if (options.bootstrap_trials > 0) {
        std::int64_t shots = options.shots;
        if (shots == 0) shots = static_cast<std::int64_t>(std::llround(result.shots_per_setting));
        if (shots < 1) invalid("bootstrap needs shots per setting (none recorded in the result)");
        BootstrapOptions bo;
        bo.threads = options.threads;
        out.bootstrap = bootstrap_errors(result.rho, shots, options.bootstrap_trials, options.seed, target, bo);
    }
    return out;
}

io::Json analysis_to_json(const AnalyzeOutput& out, BellKind target) {
    io::Json j{{"target", std::string(to_string(target))},
               {"fidelity", out.fidelity},
               {"entanglement", io::to_json(out.entanglement)}};
    if (out.bootstrap) j["bootstrap"] = io::to_json(*out.bootstrap);
    return j;
}

std::string analysis_to_text(const AnalyzeOutput& out, BellKind target) {
    const auto& e = out.entanglement;
    auto line = [&](const std::string& label, const std::string& key, double value, int decimals) {
        std::string text = fixed(value, decimals);
        if (out.bootstrap) {
            const auto it = out.bootstrap->quantities.find(key);
            if (it != out.bootstrap->quantities.end()) text = io::format_value_error(value, it->second.std);
        }
        std::ostringstream s;
        s << std::left << std::setw(20) << label << text << '\n';
        return s.str();
    };
    std::string text;
    text += line("fidelity(" + std::string(to_string(target)) + ")", "fidelity", out.fidelity, 3);
    text += line("eof", "eof", e.eof, 3);
    text += line("concurrence", "concurrence", e.concurrence, 3);
    text += line("ppt_min", "ppt_min_eig", e.ppt_min_eig, 3);
    std::string eigs = "{";
    for (std::size_t k = 0; k < 4; ++k) {
        const double v = e.ppt_eigenvalues[k];
        std::string item = fixed(v, 3);
        if (out.bootstrap) item = io::format_value_error(v, out.bootstrap->at("ppt_eig_" + std::to_string(k)).std);
        eigs += (k ? ", " : "") + item;
    }
    eigs += "}";
    std::ostringstream s;
    s << std::left << std::setw(20) << "ppt_eigenvalues" << eigs << '\n';
    text += s.str();
    text += line("chsh", "chsh", e.chsh, 3);
    text += line("beta_m", "", e.beta_m, 4);
    text += line("f_m", "", e.f_m, 4);
    if (e.phase_undefined) text += "phase undefined (|rho_10,01| < 1e-12)\n";
    if (out.bootstrap)
        text += "bootstrap: " + std::to_string(out.bootstrap->trials) + " trials, " +
                std::to_string(out.bootstrap->failed_trials) + " failed\n";
    return text;
}

ComplexVector decay_reference(BellKind kind, double omega_beta, double t) {
    switch (kind) {
        case BellKind::PsiPlus: return psi_beta(omega_beta * t);
        case BellKind::PsiMinus: return psi_beta(kPi + omega_beta * t);
        default: return bell_state(kind);
    }
}

double unwrap_phase(double previous, double wrapped) {
    const double turns = std::round((previous - wrapped) / (2.0 * kPi));
    return wrapped + 2.0 * kPi * turns;
}

std::vector<DecayRow> cmd_decay_scan(const ExperimentConfig& config, const std::vector<double>& times,
                                     unsigned threads) {
    config.validate();
    if (times.empty()) invalid("decay scan needs at least one time");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0)) throw Error(ErrorKind::NegativeTime, "scan times must be >= 0");
        if (i > 0 && !(times[i] > times[i - 1])) invalid("scan times must be strictly ascending");
    }
    const DensityMatrix prepared = prepare_bell_state(config.bell_kind, config.preparation());

    std::vector<DecayRow> rows(times.size());
    parallel_for(times.size(), threads, [&](std::size_t i) {
        const double t = times[i];
        const DensityMatrix rho_t = dephase_evolution(prepared, t, config.noise);
        const Dataset data = simulate_dataset(rho_t, config.shots, derive_seed(config.seed, i));
        const MleReport mle = mle_reconstruct(data);
        const EntanglementReport e = analyze_entanglement(mle.rho);
        DecayRow& row = rows[i];
        row.t = t;
        row.beta_m = e.beta_m;
        row.f_m = e.f_m;
        row.fidelity_beta_l = fidelity_pure(mle.rho, decay_reference(config.bell_kind, config.noise.omega_beta, t));
        row.eof = e.eof;
        row.ppt_min_eig = e.ppt_min_eig;
        row.converged = mle.converged;
        row.rho = mle.rho;
    });
    // unwrap sequentially once all rows exist
    for (std::size_t i = 1; i < rows.size(); ++i) rows[i].beta_m = unwrap_phase(rows[i - 1].beta_m, rows[i].beta_m);
    return rows;
}

std::string decay_table_csv(const std::vector<DecayRow>& rows) {
    std::ostringstream out;
    out << "t,beta_m,f_m,fidelity_beta_l,eof,ppt_min_eig\n";
    for (const auto& r : rows) {
        out << io::dump(r.t, 0) << ',' << io::dump(r.beta_m, 0) << ',' << io::dump(r.f_m, 0) << ','
            << io::dump(r.fidelity_beta_l, 0) << ',' << io::dump(r.eof, 0) << ','
            << io::dump(r.ppt_min_eig, 0) << '\n';
    }
    return out.str();
}

std::vector<double> parse_times(const std::string& text) {
    std::vector<double> out;
    auto to_double = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            invalid("bad time value '" + s + "'");
        }
        if (used != s.size()) invalid("bad time value '" + s + "'");
        return v;
    };
    if (text.find(':') != std::string::npos) {
        std::istringstream in(text);
        std::string a, b, c;
        if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c))
            invalid("time range must be start:stop:count");
        const double start = to_double(a), stop = to_double(b);
        const double count = to_double(c);
        if (count < 1 || count != std::floor(count)) invalid("time range count must be a positive integer");
        const auto n = static_cast<std::size_t>(count);
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(n == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1));
        return out;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(to_double(item));
    if (out.empty()) invalid("no times given");
    return out;
}

}  // namespace tomo::cli
