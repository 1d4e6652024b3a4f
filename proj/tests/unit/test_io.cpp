#include <gtest/gtest.h>

#include <cmath>

#include "support/generators.hpp"
#include "tomo/error.hpp"
#include "tomo/io.hpp"

using namespace tomo;
using tomo::testing::Gen;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Dump, SeventeenSignificantDigits) {
    EXPECT_EQ(io::dump(io::Json(0.1), 0), "0.10000000000000001");
    EXPECT_EQ(io::dump(io::Json(2.0), 0), "2.0");
    EXPECT_EQ(io::dump(io::Json(200), 0), "200");
    EXPECT_EQ(io::dump(io::Json{{"a", 1.5}, {"b", {1, 2}}}, 0), "{\"a\":1.5,\"b\":[1,2]}");
    EXPECT_EQ(io::dump(io::Json(std::nan("")), 0), "null");
}

TEST(Dump, RoundTripsDoublesExactly) {
    Gen gen(71);
    for (int i = 0; i < 1000; ++i) {
        const double v = gen.normal() * std::pow(10.0, gen.integer(-300, 300));
        EXPECT_EQ(io::parse(io::dump(io::Json(v))).get<double>(), v);
    }
}

TEST(Dataset, JsonRoundTrip) {
    Gen gen(73);
    const auto data = simulate_dataset(gen.density(), 200, 4);
    const auto j = io::dataset_to_json(data);
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j.size(), 9u);
    EXPECT_TRUE(j[0]["counts"]["00"].is_number_integer());
    EXPECT_EQ(j[0]["shots"], 200);
    EXPECT_EQ(io::dataset_from_json(io::parse(io::dump(j))), data);
}

TEST(Dataset, FractionalCountsSurvive) {
    const auto data = exact_dataset(DensityMatrix::pure(bell_state(BellKind::PhiMinus)), 3.3);
    EXPECT_EQ(io::dataset_from_json(io::parse(io::dump(io::dataset_to_json(data)))), data);
}

TEST(Dataset, ParsesSchemaExample) {
    const auto data = io::dataset_from_json(io::parse(
        R"([{"setting_id": 1, "shots": 200, "counts": {"00": 0, "01": 97, "10": 103, "11": 0}}])"));
    ASSERT_EQ(data.size(), 1u);
    EXPECT_EQ(data[0].setting_id, 1);
    EXPECT_EQ(data[0].counts, (std::array<double, 4>{0, 97, 103, 0}));
}

TEST(Dataset, RejectsMalformedInput) {
    for (const char* text : {
             R"({"setting_id": 1})",
             R"([{"shots": 10, "counts": {"00": 10}}])",
             R"([{"setting_id": 1, "shots": 10, "counts": {"00": -1, "01": 11}}])",
             R"([{"setting_id": 1, "shots": 11, "counts": {"00": 10}}])",
             R"([{"setting_id": 1, "counts": {"00": "ten"}}])",
             R"([{"setting_id": 1.5, "counts": {"00": 1}}])",
             "[{",
         }) {
        EXPECT_EQ(kind_of([&] { io::dataset_from_json(io::parse(text)); }), ErrorKind::MalformedInput) << text;
    }
}

TEST(Pulses, JsonRoundTrip) {
    const auto seq = bell_sequence(BellKind::PhiMinus);
    const auto j = io::pulses_to_json(seq);
    EXPECT_EQ(j[0]["kind"], "blue_sideband");
    EXPECT_EQ(j[1]["ion"], 2);
    EXPECT_EQ(io::pulses_from_json(io::parse(io::dump(j))), seq);
    EXPECT_EQ(kind_of([] { io::pulses_from_json(io::parse(R"([{"ion":1,"kind":"red","theta":1,"phi":0}])")); }),
              ErrorKind::MalformedInput);
    EXPECT_EQ(kind_of([] { io::pulses_from_json(io::parse(R"([{"ion":1,"kind":"carrier","theta":-1,"phi":0}])")); }),
              ErrorKind::MalformedInput);
}

TEST(Matrix, JsonAndCsvRoundTrip) {
    Gen gen(79);
    const auto m = gen.density().matrix();
    EXPECT_EQ(io::matrix_from_json(io::parse(io::dump(io::matrix_to_json(m)))), m);
    const std::string csv = io::matrix_to_csv(m);
    EXPECT_EQ(csv.rfind("row,col,re,im\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
    EXPECT_EQ(io::matrix_from_csv(csv), m);
}

TEST(Matrix, CsvRejectsGaps) {
    EXPECT_EQ(kind_of([] { io::matrix_from_csv("row,col,re,im\n0,0,1,0\n1,1,0,0\n"); }), ErrorKind::MalformedInput);
    EXPECT_EQ(kind_of([] { io::matrix_from_csv("i,j\n"); }), ErrorKind::MalformedInput);
    EXPECT_EQ(kind_of([] { io::matrix_from_csv("row,col,re,im\n0,0,x,0\n"); }), ErrorKind::MalformedInput);
}

TEST(Matrix, JsonRejectsRagged) {
    EXPECT_EQ(kind_of([] { io::matrix_from_json(io::parse(R"({"re": [[1, 0], [0]], "im": [[0, 0], [0, 0]]})")); }),
              ErrorKind::MalformedInput);
}

TEST(Reports, FlatEntanglementJson) {
    const auto r = analyze_entanglement(DensityMatrix::pure(bell_state(BellKind::PsiPlus)));
    const auto j = io::to_json(r);
    for (const char* key : {"eof", "concurrence", "ppt_min_eig", "ppt_eigenvalues", "chsh", "beta_m", "f_m", "phase_undefined"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["ppt_eigenvalues"].size(), 4u);
}

TEST(ValueError, PaperStyle) {
    EXPECT_EQ(io::format_value_error(0.7912, 0.043), "0.79(4)");
    EXPECT_EQ(io::format_value_error(-0.4187, 0.021), "-0.42(2)");
    EXPECT_EQ(io::format_value_error(2.5213, 0.061), "2.52(6)");
    EXPECT_EQ(io::format_value_error(0.91, 0.0096), "0.91(1)");
    EXPECT_EQ(io::format_value_error(0.5, 0.0), "0.500");
    EXPECT_EQ(io::format_value_error(123.4, 12.0), "123(12)");
}
