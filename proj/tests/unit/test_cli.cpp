#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "tomo/error.hpp"

using namespace tomo;
using namespace tomo::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(const std::string& args) {
    const std::string cmd = std::string(TOMO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("tomo_cli_" + std::to_string(::getpid()) + "_" +
                                           ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST(Config, DefaultsAndValidation) {
    ExperimentConfig c;
    EXPECT_EQ(c.shots, 200);
    EXPECT_NO_THROW(c.validate());
    c.shots = 0;
    EXPECT_THROW(c.validate(), Error);
    c = {};
    c.preset = "lab";
    EXPECT_THROW(c.validate(), Error);
    c = {};
    c.hold_time = -1;
    EXPECT_THROW(c.validate(), Error);
    c = {};
    c.noise.gamma_collective = -1;
    EXPECT_THROW(c.validate(), Error);
}

TEST(Config, JsonRoundTripAndUnknownKeys) {
    ExperimentConfig c;
    c.bell_kind = BellKind::PhiMinus;
    c.seed = 42;
    c.crosstalk = 0.01;
    c.noise.omega_beta = 3.0;
    const auto back = config_from_json(config_to_json(c));
    EXPECT_EQ(back.bell_kind, BellKind::PhiMinus);
    EXPECT_EQ(back.seed, 42u);
    EXPECT_EQ(back.crosstalk, 0.01);
    EXPECT_EQ(back.noise.omega_beta, 3.0);
    EXPECT_THROW(config_from_json(io::parse(R"({"shot": 3})")), Error);
    EXPECT_THROW(config_from_json(io::parse(R"({"noise": {"omega": 3}})")), Error);
}

TEST(Simulate, NoiselessManyShotsMatchesPsiPlus) {
    ExperimentConfig c;
    c.shots = 100000;
    c.seed = 3;
    const auto out = cmd_simulate(c);
    const auto est = estimate_expectations(out.dataset);
    for (int k = 0; k < 16; ++k) {
        const double expected = (out.true_rho.matrix() * pauli_operator(PauliIndex::from_flat(k))).trace().real();
        EXPECT_NEAR(est[k], expected, 0.02) << k;
    }
    EXPECT_NEAR(fidelity_pure(out.true_rho, bell_state(BellKind::PsiPlus)), 1.0, 1e-12);
}

TEST(Simulate, HoldTimeAppliesDephasing) {
    ExperimentConfig c;
    c.bell_kind = BellKind::PhiPlus;
    c.hold_time = 200e-6;
    EXPECT_NEAR(fidelity_pure(prepared_state(c), bell_state(BellKind::PhiPlus)), 0.75, 1e-6);
}

TEST(Reconstruct, NoiselessHighShots) {
    ExperimentConfig c;
    c.shots = 100000;
    const auto result = cmd_reconstruct(cmd_simulate(c).dataset);
    EXPECT_GE(fidelity_pure(result.mle.rho, bell_state(BellKind::PsiPlus)), 0.999);
    EXPECT_EQ(result.shots_per_setting, 100000.0);
}

TEST(Reconstruct, PaperLike) {
    ExperimentConfig c;
    c.preset = "paper-like";
    c.seed = 11;
    const auto result = cmd_reconstruct(cmd_simulate(c).dataset);
    EXPECT_NEAR(fidelity_pure(result.mle.rho, bell_state(BellKind::PsiPlus)), 0.91, 0.04);
}

TEST(Reconstruct, TruncatedDataset) {
    auto data = cmd_simulate({}).dataset;
    data.pop_back();
    try {
        cmd_reconstruct(data);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IncompleteSettings);
    }
}

TEST(Analyze, IdealPsiPlusText) {
    const auto out = cmd_analyze({DensityMatrix::pure(bell_state(BellKind::PsiPlus)), 200}, {});
    const std::string text = analysis_to_text(out, BellKind::PsiPlus);
    EXPECT_NE(text.find("1.000"), std::string::npos);
    EXPECT_NE(text.find("-0.500"), std::string::npos);
    EXPECT_NE(text.find("2.828"), std::string::npos);
}

TEST(Analyze, SeparableState) {
    const auto out = cmd_analyze({DensityMatrix::pure(basis_state(0, 0)), 200}, {});
    EXPECT_EQ(out.entanglement.eof, 0.0);
    EXPECT_LE(out.entanglement.chsh, 2.0);
}

TEST(Analyze, BootstrapValueErrorFormatting) {
    ExperimentConfig c;
    c.preset = "paper-like";
    const auto result = cmd_reconstruct(cmd_simulate(c).dataset);
    AnalyzeOptions options;
    options.bootstrap_trials = 40;
    const auto out = cmd_analyze({result.mle.rho, result.shots_per_setting}, options);
    ASSERT_TRUE(out.bootstrap);
    const std::string text = analysis_to_text(out, BellKind::PsiPlus);
    EXPECT_NE(text.find('('), std::string::npos);
    const auto j = analysis_to_json(out, BellKind::PsiPlus);
    EXPECT_EQ(j["bootstrap"]["trials"], 40);
}

TEST(DecayScan, UnwrapPhase) {
    EXPECT_NEAR(unwrap_phase(6.0, 0.1), 2 * kPi + 0.1, 1e-15);
    EXPECT_NEAR(unwrap_phase(0.1, 6.2), 6.2 - 2 * kPi, 1e-15);
    EXPECT_EQ(unwrap_phase(1.0, 1.2), 1.2);
}

TEST(DecayScan, ParseTimes) {
    EXPECT_EQ(parse_times("0,1e-3,2e-3"), (std::vector<double>{0, 1e-3, 2e-3}));
    const auto r = parse_times("0:6e-3:13");
    ASSERT_EQ(r.size(), 13u);
    EXPECT_DOUBLE_EQ(r[12], 6e-3);
    EXPECT_DOUBLE_EQ(r[6], 3e-3);
    EXPECT_THROW(parse_times("a,b"), Error);
    EXPECT_THROW(parse_times("0:1:0"), Error);
}

TEST(DecayScan, RejectsBadTimes) {
    EXPECT_THROW(cmd_decay_scan({}, {}), Error);
    EXPECT_THROW(cmd_decay_scan({}, {2e-3, 1e-3}), Error);
    EXPECT_THROW(cmd_decay_scan({}, {-1e-3}), Error);
}

TEST(DecayScan, PhiPlusAt200us) {
    ExperimentConfig c;
    c.bell_kind = BellKind::PhiPlus;
    c.shots = 20000;
    const auto rows = cmd_decay_scan(c, {200e-6});
    EXPECT_NEAR(rows[0].fidelity_beta_l, 0.75, 0.02);
}

TEST(DecayScan, EntanglementDecaysMonotonically) {
    // exact model evaluation (no sampling) along the scan grid
    ExperimentConfig c;
    double prev_eof = 2.0, prev_ppt = -1.0;
    for (double t = 0.0; t <= 20e-3; t += 1e-3) {
        const auto rho = dephase_evolution(prepared_state(c), t, c.noise);
        const auto e = analyze_entanglement(rho);
        EXPECT_LE(e.eof, prev_eof + 1e-12);
        EXPECT_GE(e.ppt_min_eig, prev_ppt - 1e-12);
        prev_eof = e.eof;
        prev_ppt = e.ppt_min_eig;
    }
    EXPECT_LT(prev_eof, 0.1);
}

TEST(DecayScan, ThreadedMatchesSequential) {
    ExperimentConfig c;
    const auto times = parse_times("0:4e-3:5");
    EXPECT_EQ(decay_table_csv(cmd_decay_scan(c, times, 1)), decay_table_csv(cmd_decay_scan(c, times, 3)));
}

TEST_F(CliFiles, EndToEndDeterministic) {
    ASSERT_EQ(run("simulate --bell psi- --preset paper-like --seed 5 --out " + path("a.json")), 0);
    ASSERT_EQ(run("simulate --bell psi- --preset paper-like --seed 5 --out " + path("b.json")), 0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    ASSERT_EQ(run("reconstruct " + path("a.json") + " --out " + path("r.json") + " --csv " + path("r.csv")), 0);
    const auto result = io::parse(slurp(path("r.json")));
    for (const char* key : {"rho", "log_likelihood", "iterations", "converged", "initial_point", "linear_inversion"})
        EXPECT_TRUE(result.contains(key)) << key;
    EXPECT_EQ(io::matrix_from_csv(slurp(path("r.csv"))), io::matrix_from_json(result["rho"]));
    ASSERT_EQ(run("analyze " + path("r.json") + " --bell psi- --bootstrap 10 --out " + path("an.json")), 0);
    EXPECT_TRUE(io::parse(slurp(path("an.json"))).contains("bootstrap"));
}

TEST_F(CliFiles, ConfigFileWithFlagOverride) {
    {
        std::ofstream cfg(path("cfg.json"));
        cfg << R"({"bell": "phi+", "shots": 300, "seed": 9})";
    }
    ASSERT_EQ(run("simulate --config " + path("cfg.json") + " --shots 50 --out " + path("d.json")), 0);
    const auto data = io::dataset_from_json(io::parse(slurp(path("d.json"))));
    EXPECT_EQ(data[0].shots(), 50.0);
    ExperimentConfig c;
    c.bell_kind = BellKind::PhiPlus;
    c.shots = 50;
    c.seed = 9;
    EXPECT_EQ(data, cmd_simulate(c).dataset);
}

TEST_F(CliFiles, ExitCodes) {
    EXPECT_EQ(run("simulate --bell psi0"), kExitValidation);
    EXPECT_EQ(run("simulate --shots 0"), kExitValidation);
    EXPECT_EQ(run("frobnicate"), kExitValidation);
    EXPECT_EQ(run("reconstruct " + path("missing.json")), kExitIo);
    EXPECT_EQ(run("simulate --out " + path("no/such/dir/x.json")), kExitIo);
    {
        std::ofstream bad(path("bad.json"));
        bad << "[{\"setting_id\": 1, \"shots\": 1, \"counts\": {\"00\": 1}}]";
    }
    EXPECT_EQ(run("reconstruct " + path("bad.json")), kExitValidation);
    EXPECT_EQ(run("decay-scan --times 0:1e-3:3 --out " + path("s.csv")), kExitOk);
    const std::string csv = slurp(path("s.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,beta_m,f_m,fidelity_beta_l,eof,ppt_min_eig");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}
