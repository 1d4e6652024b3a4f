#pragma once

#include <array>
#include <map>
#include <span>

#include "tomo/matrix.hpp"
#include "tomo/measure.hpp"
#include "tomo/qstate.hpp"

namespace tomo {

/// Sixteen reals describing a lower-triangular complex 4x4 matrix T: the four
/// (real) diagonal entries first, then real/imaginary pairs of the strictly
/// lower entries in row-major order (1,0), (2,0), (2,1), (3,0), (3,1), (3,2).
class CholeskyParams {
public:
    static constexpr std::size_t kSize = 16;

    CholeskyParams() = default;
    explicit CholeskyParams(const std::array<double, kSize>& values) : values_(values) {}

    /// Finds T with T^dagger T = (rho + eps I) / (1 + 4 eps).
    static CholeskyParams from_density(const DensityMatrix& rho, double epsilon = 1e-6);

    const std::array<double, kSize>& values() const noexcept { return values_; }
    std::array<double, kSize>& values() noexcept { return values_; }

    ComplexMatrix lower() const;
    /// T^dagger T / tr(T^dagger T): Hermitian, positive semidefinite and unit
    /// trace for every parameter vector except all-zero.
    ComplexMatrix density_matrix() const;
    DensityMatrix density() const { return DensityMatrix(density_matrix()); }

private:
    std::array<double, kSize> values_{};
};

/// rho_R = sum_p (estimate_p / 4) O_p. Hermitian with unit trace when the
/// identity entry is 1; not necessarily positive.
ComplexMatrix linear_inversion(const PauliTable& estimates);
/// Throws MissingObservable unless all 16 entries are present.
ComplexMatrix linear_inversion(const std::map<PauliIndex, double>& estimates);

/// rho_P = P rho_R P / tr(P rho_R P) with P the projector onto the eigenvectors
/// of rho_R with non-negative eigenvalues. Throws DegenerateProjection when the
/// retained trace is at most 1e-12.
DensityMatrix project_physical(const ComplexMatrix& rho_r);

inline constexpr double kProbabilityFloor = 1e-12;

/// sum over settings and outcomes of n_{s,k} ln max(p_{s,k}(rho), 1e-12).
double log_likelihood(const DensityMatrix& rho, std::span<const CountsRecord> records);
double log_likelihood(const ComplexMatrix& rho, std::span<const CountsRecord> records);

struct MleOptions {
    int max_iterations = 5000;
    double tolerance = 1e-9;      // on |delta log L| over one iteration
    double start_epsilon = 1e-6;  // added to rho_P before factoring
};

struct MleReport {
    DensityMatrix rho;
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;
    DensityMatrix initial_point;      // rho_P
    ComplexMatrix linear_inversion;   // rho_R
};

/// Gradient of log_likelihood(params.density_matrix()) with respect to params.
std::array<double, CholeskyParams::kSize> log_likelihood_gradient(
    const CholeskyParams& params, std::span<const CountsRecord> records);

/// estimate_expectations -> linear_inversion -> project_physical -> Cholesky
/// start -> quasi-Newton ascent of the log-likelihood.
MleReport mle_reconstruct(std::span<const CountsRecord> records, const MleOptions& options = {});

}  // namespace tomo
