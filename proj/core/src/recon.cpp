#include "tomo/recon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tomo/error.hpp"

namespace tomo {

namespace {

constexpr std::array<std::pair<std::size_t, std::size_t>, 6> kLowerEntries = {
    {{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}}};

using Effects = std::array<std::array<ComplexMatrix, 4>, kSettingCount>;

const Effects& ideal_effects() {
    static const Effects effects = [] {
        Effects out;
        for (const auto& s : settings_table()) out[s.id - 1] = outcome_operators(s);
        return out;
    }();
    return effects;
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    Complex t = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) t += a(i, j) * b(j, i);
    return t.real();
}

const std::array<ComplexMatrix, 4>& effects_for(int setting_id) {
    if (setting_id < 1 || setting_id > kSettingCount)
        throw Error(ErrorKind::IncompleteSettings,
                    "unknown setting id " + std::to_string(setting_id));
    return ideal_effects()[static_cast<std::size_t>(setting_id - 1)];
}

// Cholesky factor L L^dagger = a of a positive definite matrix.
ComplexMatrix cholesky_lower(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix l(n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > 0.0)) throw Error(ErrorKind::NotPhysical, "start point is not positive definite");
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    return l;
}

ComplexMatrix reverse_indices(const ComplexMatrix& m) {
    const std::size_t n = m.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = m(n - 1 - i, n - 1 - j);
    return out;
}

using Vec = std::array<double, CholeskyParams::kSize>;

double dot(const Vec& a, const Vec& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

CholeskyParams CholeskyParams::from_density(const DensityMatrix& rho, double epsilon) {
    // With J the exchange matrix: J A J = L L^dagger gives A = T^dagger T for
    // the lower-triangular T = J L^dagger J.
    ComplexMatrix a = rho.matrix() + ComplexMatrix::identity(4) * Complex(epsilon);
    a *= Complex(1.0 / (1.0 + 4.0 * epsilon));
    const ComplexMatrix t = reverse_indices(cholesky_lower(reverse_indices(a)).adjoint());
    CholeskyParams p;
    for (std::size_t i = 0; i < 4; ++i) p.values_[i] = t(i, i).real();
    for (std::size_t k = 0; k < kLowerEntries.size(); ++k) {
        const auto [i, j] = kLowerEntries[k];
        p.values_[4 + 2 * k] = t(i, j).real();
        p.values_[5 + 2 * k] = t(i, j).imag();
    }
    return p;
}

ComplexMatrix CholeskyParams::lower() const {
    ComplexMatrix t(4);
    for (std::size_t i = 0; i < 4; ++i) t(i, i) = values_[i];
    for (std::size_t k = 0; k < kLowerEntries.size(); ++k) {
        const auto [i, j] = kLowerEntries[k];
        t(i, j) = Complex(values_[4 + 2 * k], values_[5 + 2 * k]);
    }
    return t;
}

ComplexMatrix CholeskyParams::density_matrix() const {
    const ComplexMatrix t = lower();
    ComplexMatrix a = t.adjoint() * t;
    const double tr = a.trace().real();
    if (!(tr > 0.0)) throw Error(ErrorKind::InvalidArgument, "Cholesky parameters are all zero");
    a *= Complex(1.0 / tr);
    return a.hermitian_part();
}

ComplexMatrix linear_inversion(const PauliTable& estimates) {
    PauliTable coeffs{};
    for (int k = 0; k < 16; ++k) coeffs[k] = estimates[k] / 4.0;
    return matrix_from_coefficients(coeffs).hermitian_part();
}

ComplexMatrix linear_inversion(const std::map<PauliIndex, double>& estimates) {
    PauliTable table{};
    for (int k = 0; k < 16; ++k) {
        const auto p = PauliIndex::from_flat(k);
        const auto it = estimates.find(p);
        if (it == estimates.end())
            throw Error(ErrorKind::MissingObservable, "no estimate for (" + std::to_string(p.first) +
                                                          "," + std::to_string(p.second) + ")");
        table[k] = it->second;
    }
    return linear_inversion(table);
}

DensityMatrix project_physical(const ComplexMatrix& rho_r) {
    const auto es = eigh(rho_r);
    ComplexMatrix projector(rho_r.dim());
    for (std::size_t k = 0; k < es.values.size(); ++k) {
        if (es.values[k] < 0.0) continue;
        for (std::size_t i = 0; i < rho_r.dim(); ++i)
            for (std::size_t j = 0; j < rho_r.dim(); ++j)
                projector(i, j) += es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    ComplexMatrix kept = projector * rho_r.hermitian_part() * projector;
    const double tr = kept.trace().real();
    if (!(tr > 1e-12))
        throw Error(ErrorKind::DegenerateProjection, "no positive part to project onto");
    kept *= Complex(1.0 / tr);
    return DensityMatrix(kept.hermitian_part());
}

double log_likelihood(const ComplexMatrix& rho, std::span<const CountsRecord> records) {
    double total = 0.0;
    for (const auto& r : records) {
        const auto& effects = effects_for(r.setting_id);
        for (std::size_t k = 0; k < 4; ++k) {
            if (r.counts[k] == 0.0) continue;
            const double p = std::max(trace_product(rho, effects[k]), kProbabilityFloor);
            total += r.counts[k] * std::log(p);
        }
    }
    return total;
}

double log_likelihood(const DensityMatrix& rho, std::span<const CountsRecord> records) {
    return log_likelihood(rho.matrix(), records);
}

std::array<double, CholeskyParams::kSize> log_likelihood_gradient(
    const CholeskyParams& params, std::span<const CountsRecord> records) {
    // L = sum n ln tr(rho E), rho = A / tr A, A = T^dagger T. With
    // G = sum (n/p) E and M = (G - tr(G rho) I) / tr A, dL = 2 Re tr(M T^dagger dT).
    const ComplexMatrix t = params.lower();
    const ComplexMatrix a = t.adjoint() * t;
    const double tr_a = a.trace().real();
    ComplexMatrix rho = a * Complex(1.0 / tr_a);

    ComplexMatrix g(4);
    for (const auto& r : records) {
        const auto& effects = effects_for(r.setting_id);
        for (std::size_t k = 0; k < 4; ++k) {
            if (r.counts[k] == 0.0) continue;
            const double p = trace_product(rho, effects[k]);
            if (p <= kProbabilityFloor) continue;  // flat region of the floor
            g += effects[k] * Complex(r.counts[k] / p);
        }
    }
    const double g_rho = trace_product(g, rho);
    ComplexMatrix m = g - ComplexMatrix::identity(4) * Complex(g_rho);
    m *= Complex(1.0 / tr_a);
    const ComplexMatrix k = m * t.adjoint();

    std::array<double, CholeskyParams::kSize> grad{};
    for (std::size_t i = 0; i < 4; ++i) grad[i] = 2.0 * k(i, i).real();
    for (std::size_t e = 0; e < kLowerEntries.size(); ++e) {
        const auto [i, j] = kLowerEntries[e];
        grad[4 + 2 * e] = 2.0 * k(j, i).real();
        grad[5 + 2 * e] = -2.0 * k(j, i).imag();
    }
    return grad;
}

MleReport mle_reconstruct(std::span<const CountsRecord> records, const MleOptions& options) {
    const PauliTable estimates = estimate_expectations(records);
    const ComplexMatrix rho_r = linear_inversion(estimates);
    const DensityMatrix rho_p = project_physical(rho_r);

    CholeskyParams x = CholeskyParams::from_density(rho_p, options.start_epsilon);
    auto objective = [&](const CholeskyParams& p) {
        return log_likelihood(p.density_matrix(), records);
    };

    // BFGS on -L with an Armijo backtracking line search. Accepted steps never
    // decrease L, so the result is at least as likely as the start.
    std::array<Vec, CholeskyParams::kSize> h{};
    auto reset_hessian = [&] {
        for (std::size_t i = 0; i < h.size(); ++i) {
            h[i].fill(0.0);
            h[i][i] = 1.0;
        }
    };
    reset_hessian();

    double f = objective(x);
    Vec grad = log_likelihood_gradient(x, records);
    bool converged = false;
    int iter = 0;
    bool restarted = false;
    for (; iter < options.max_iterations; ++iter) {
        // ascent direction d = H grad
        Vec d{};
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = dot(h[i], grad);
        double slope = dot(grad, d);
        if (!(slope > 0.0)) {
            reset_hessian();
            d = grad;
            slope = dot(grad, d);
        }
        if (slope == 0.0) {
            converged = true;
            break;
        }

        double step = 1.0;
        CholeskyParams trial = x;
        double f_trial = f;
        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving) {
            for (std::size_t i = 0; i < d.size(); ++i) trial.values()[i] = x.values()[i] + step * d[i];
            f_trial = objective(trial);
            if (std::isfinite(f_trial) && f_trial >= f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // Retry once along the plain gradient before declaring a stall.
            if (!restarted) {
                restarted = true;
                reset_hessian();
                continue;
            }
            // No representable improvement: |delta L| = 0 over this iteration.
            converged = true;
            ++iter;
            break;
        }
        restarted = false;

        const Vec grad_new = log_likelihood_gradient(trial, records);
        Vec s{}, y{};
        for (std::size_t i = 0; i < s.size(); ++i) {
            s[i] = trial.values()[i] - x.values()[i];
            y[i] = grad[i] - grad_new[i];  // gradient of -L
        }
        const double delta = f_trial - f;
        x = trial;
        f = f_trial;
        grad = grad_new;

        const double sy = dot(s, y);
        if (sy > 1e-300) {
            // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
            const double rho_k = 1.0 / sy;
            Vec hy{};
            for (std::size_t i = 0; i < hy.size(); ++i) hy[i] = dot(h[i], y);
            const double yhy = dot(y, hy);
            for (std::size_t i = 0; i < h.size(); ++i)
                for (std::size_t j = 0; j < h.size(); ++j)
                    h[i][j] += rho_k * ((1.0 + rho_k * yhy) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
        }

        if (std::abs(delta) < options.tolerance) {
            converged = true;
            ++iter;
            break;
        }
    }

    DensityMatrix best = x.density();
    double best_ll = f;
    const double start_ll = log_likelihood(rho_p, records);
    if (start_ll > best_ll) {
        best = rho_p;
        best_ll = start_ll;
    }
    return MleReport{best, best_ll, iter, converged, rho_p, rho_r};
}

}  // namespace tomo
