#include "tomo/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tomo/error.hpp"
#include "tomo/pulse.hpp"
#include "tomo/random.hpp"

namespace tomo {

namespace {

constexpr AnalysisPulse kToX{kPi / 2.0, 3.0 * kPi / 2.0};  // sigma_x -> sigma_z
constexpr AnalysisPulse kToY{kPi / 2.0, kPi};              // sigma_y -> sigma_z

std::vector<MeasurementSetting> build_table() {
    const auto P = [](int i, int j) { return PauliIndex(i, j); };
    const std::optional<AnalysisPulse> none;
    return {
        {1, none, none, {P(3, 0), P(0, 3), P(3, 3)}, {true, true, true}},
        {2, kToX, none, {P(1, 0), P(0, 3), P(1, 3)}, {true, false, true}},
        {3, kToY, none, {P(2, 0), P(0, 3), P(2, 3)}, {true, false, true}},
        {4, none, kToX, {P(3, 0), P(0, 1), P(3, 1)}, {false, true, true}},
        {5, none, kToY, {P(3, 0), P(0, 2), P(3, 2)}, {false, true, true}},
        {6, kToX, kToX, {P(1, 0), P(0, 1), P(1, 1)}, {false, false, true}},
        {7, kToX, kToY, {P(1, 0), P(0, 2), P(1, 2)}, {false, false, true}},
        {8, kToY, kToX, {P(2, 0), P(0, 1), P(2, 1)}, {false, false, true}},
        {9, kToY, kToY, {P(2, 0), P(0, 2), P(2, 2)}, {false, false, true}},
    };
}

ComplexMatrix carrier_2x2(const AnalysisPulse& pulse, double theta_scale) {
    const ComplexMatrix generator =
        pauli(1) * Complex(std::cos(pulse.phi)) - pauli(2) * Complex(std::sin(pulse.phi));
    return unitary_from_hermitian(generator, pulse.theta * theta_scale / 2.0);
}

ComplexMatrix on_ion(int ion, const ComplexMatrix& u) {
    const auto id = ComplexMatrix::identity(2);
    return ion == 1 ? kron(u, id) : kron(id, u);
}

OutcomeProbabilities apply_readout_flip(const OutcomeProbabilities& p, double q) {
    if (q == 0.0) return p;
    OutcomeProbabilities out{};
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            const int flips = ((x ^ y) & 1) + (((x ^ y) >> 1) & 1);
            out[y] += p[x] * std::pow(q, flips) * std::pow(1.0 - q, 2 - flips);
        }
    return out;
}

OutcomeProbabilities normalized(OutcomeProbabilities p) {
    double total = 0.0;
    for (auto& v : p) {
        v = std::max(v, 0.0);
        total += v;
    }
    for (auto& v : p) v /= total;
    return p;
}

}  // namespace

std::vector<PauliIndex> MeasurementSetting::bold_observables() const {
    std::vector<PauliIndex> out;
    for (int k = 0; k < 3; ++k)
        if (bold[k]) out.push_back(measured[k]);
    return out;
}

const std::vector<MeasurementSetting>& settings_table() {
    static const std::vector<MeasurementSetting> table = build_table();
    return table;
}

const MeasurementSetting& setting_by_id(int id) {
    if (id < 1 || id > kSettingCount)
        throw Error(ErrorKind::InvalidArgument, "setting id " + std::to_string(id) + " not in 1..9");
    return settings_table()[static_cast<std::size_t>(id - 1)];
}

void MeasurementSystematics::validate() const {
    if (!(crosstalk >= 0.0 && crosstalk <= 1.0))
        throw Error(ErrorKind::InvalidArgument, "analysis crosstalk must lie in [0, 1]");
    if (!(readout_flip >= 0.0 && readout_flip <= 0.5))
        throw Error(ErrorKind::InvalidArgument, "readout flip probability must lie in [0, 0.5]");
    if (!std::isfinite(angle_error))
        throw Error(ErrorKind::InvalidArgument, "angle error must be finite");
}

ComplexMatrix setting_unitary(const MeasurementSetting& setting, const MeasurementSystematics& sys) {
    sys.validate();
    ComplexMatrix u = ComplexMatrix::identity(4);
    const double scale = 1.0 + sys.angle_error;
    const double leak = std::sqrt(sys.crosstalk);
    auto apply = [&](int ion, const std::optional<AnalysisPulse>& rot) {
        if (!rot) return;
        u = on_ion(ion, carrier_2x2(*rot, scale)) * u;
        if (leak > 0.0) u = on_ion(3 - ion, carrier_2x2(*rot, scale * leak)) * u;
    };
    apply(1, setting.rot1);
    apply(2, setting.rot2);
    return u;
}

std::array<ComplexMatrix, 4> outcome_operators(const MeasurementSetting& setting,
                                               const MeasurementSystematics& sys) {
    const ComplexMatrix u = setting_unitary(setting, sys);
    std::array<ComplexMatrix, 4> effects;
    for (std::size_t k = 0; k < 4; ++k) {
        // E_k = U^dagger |k><k| U = (row k of U)^dagger (row k of U)
        ComplexVector row(4);
        for (std::size_t j = 0; j < 4; ++j) row[j] = std::conj(u(k, j));
        effects[k] = ComplexMatrix::projector(row);
    }
    return effects;
}

OutcomeProbabilities outcome_probabilities(const DensityMatrix& rho,
                                           const MeasurementSetting& setting,
                                           const MeasurementSystematics& sys) {
    const auto effects = outcome_operators(setting, sys);
    OutcomeProbabilities p{};
    for (std::size_t k = 0; k < 4; ++k) {
        double v = (rho.matrix() * effects[k]).trace().real();
        p[k] = v < 0.0 ? 0.0 : v;
    }
    return normalized(apply_readout_flip(p, sys.readout_flip));
}

CountsRecord sample_counts(const DensityMatrix& rho, const MeasurementSetting& setting,
                           std::int64_t shots, std::uint64_t seed,
                           const MeasurementSystematics& sys) {
    if (shots < 1) throw Error(ErrorKind::InvalidArgument, "shots must be >= 1");
    const auto p = outcome_probabilities(rho, setting, sys);
    const std::array<double, 3> cdf = {p[0], p[0] + p[1], p[0] + p[1] + p[2]};
    UniformStream stream(seed);
    std::array<std::int64_t, 4> counts{};
    for (std::int64_t shot = 0; shot < shots; ++shot) {
        const double u = stream.next();
        std::size_t k = 0;
        while (k < 3 && u >= cdf[k]) ++k;
        ++counts[k];
    }
    CountsRecord record{setting.id, {}};
    for (std::size_t k = 0; k < 4; ++k) record.counts[k] = static_cast<double>(counts[k]);
    return record;
}

CountsRecord exact_counts(const DensityMatrix& rho, const MeasurementSetting& setting, double shots,
                          const MeasurementSystematics& sys) {
    const auto p = outcome_probabilities(rho, setting, sys);
    CountsRecord record{setting.id, {}};
    for (std::size_t k = 0; k < 4; ++k) record.counts[k] = shots * p[k];
    return record;
}

Dataset simulate_dataset(const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed,
                         const MeasurementSystematics& sys) {
    Dataset out;
    for (const auto& setting : settings_table())
        out.push_back(sample_counts(rho, setting, shots,
                                    derive_seed(seed, static_cast<std::uint64_t>(setting.id)), sys));
    return out;
}

Dataset exact_dataset(const DensityMatrix& rho, double shots) {
    Dataset out;
    for (const auto& setting : settings_table()) out.push_back(exact_counts(rho, setting, shots));
    return out;
}

SettingEstimates setting_estimates(const CountsRecord& record) {
    const double n = record.shots();
    if (!(n > 0.0)) throw Error(ErrorKind::InvalidArgument, "record has no shots");
    SettingEstimates e{record.setting_id};
    for (int k = 0; k < 4; ++k) {
        const double f = record.counts[k] / n;
        const double s1 = (k >> 1) == 0 ? 1.0 : -1.0;
        const double s2 = (k & 1) == 0 ? 1.0 : -1.0;
        e.z1 += s1 * f;
        e.z2 += s2 * f;
        e.zz += s1 * s2 * f;
    }
    return e;
}

void check_complete(std::span<const CountsRecord> records) {
    std::array<int, kSettingCount> seen{};
    for (const auto& r : records) {
        if (r.setting_id < 1 || r.setting_id > kSettingCount)
            throw Error(ErrorKind::IncompleteSettings,
                        "unknown setting id " + std::to_string(r.setting_id));
        for (double c : r.counts)
            if (!(c >= 0.0)) throw Error(ErrorKind::MalformedInput, "negative count");
        if (++seen[r.setting_id - 1] > 1)
            throw Error(ErrorKind::DuplicateSetting,
                        "setting " + std::to_string(r.setting_id) + " appears twice");
        if (!(r.shots() > 0.0))
            throw Error(ErrorKind::IncompleteSettings,
                        "setting " + std::to_string(r.setting_id) + " has no shots");
    }
    for (int id = 1; id <= kSettingCount; ++id)
        if (seen[id - 1] == 0)
            throw Error(ErrorKind::IncompleteSettings, "setting " + std::to_string(id) + " missing");
}

PauliTable estimate_expectations(std::span<const CountsRecord> records) {
    check_complete(records);
    PauliTable out{};
    out[0] = 1.0;
    for (const auto& r : records) {
        const auto& setting = setting_by_id(r.setting_id);
        const auto e = setting_estimates(r);
        const std::array<double, 3> values = {e.z1, e.z2, e.zz};
        for (int k = 0; k < 3; ++k)
            if (setting.bold[k]) out[setting.measured[k].flat()] = std::clamp(values[k], -1.0, 1.0);
    }
    return out;
}

}  // namespace tomo
