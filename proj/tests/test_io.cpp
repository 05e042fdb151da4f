#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "qcorr/error.hpp"
#include "qcorr/families.hpp"
#include "qcorr/io.hpp"
#include "qcorr/random.hpp"
#include "qcorr/state_ops.hpp"

using namespace qcorr;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(StateJson, RoundTripThroughFile) {
  Rng rng(1);
  const auto path = std::filesystem::temp_directory_path() / "qcorr_io_roundtrip.json";
  for (const auto& layout : {SubsystemLayout::qubits(2), SubsystemLayout({2, 3}), SubsystemLayout::qubits(3)}) {
    const auto rho = random_state(layout, 3, rng);
    save_state_file(rho, path);
    const auto back = load_state_file(path);
    EXPECT_EQ(back.layout(), layout);
    EXPECT_LT(oracle::max_abs_diff(back.matrix(), rho.matrix()), 1e-12);
  }
  std::filesystem::remove(path);
}

TEST(StateJson, ParsesDocument) {
  const auto rho = parse_state_json(R"({"dims":[2],"matrix":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]})");
  EXPECT_LT(oracle::max_abs_diff(rho.matrix(), Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(StateJson, MalformedReportsLineAndColumn) {
  try {
    parse_state_json("{\"dims\": [2],\n  \"matrix\": [[ ,]]}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("column"), std::string::npos) << e.what();
  }
}

TEST(StateJson, StructuralErrors) {
  EXPECT_EQ(code_of([] { parse_state_json(R"({"matrix":[]})"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_state_json(R"({"dims":[2],"matrix":[[[1,0]]]})"); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { parse_state_json(R"({"dims":[2],"matrix":[[[1,0],[0,0]],[[0,0],"x"]]})"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_state_json(R"({"dims":[2],"matrix":[[[1,0],[0.1,0]],[[0,0],[0,0]]]})"); }),
            ErrorCode::NonHermitian);
  EXPECT_EQ(code_of([] { load_state_file("/nonexistent/state.json"); }), ErrorCode::ParseError);
}

TEST(Csv, Formatting) {
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1234567890123.0), "1.23456789e+12");
  EXPECT_EQ(format_number(kInfinite), "inf");
  EXPECT_EQ(csv_quote("plain"), "plain");
  EXPECT_EQ(csv_quote("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_quote("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_quote("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(csv_header(), "version,family,params,E,D,Q,C,T,L,delta_AB,delta_BA,MID,flags");
}

TEST(Csv, RowForReport) {
  MeasureRequest req;
  req.targets = parse_measures("T,MID");
  const auto report = compute_report(instantiate(family::Bell{}), req);
  const std::string row = csv_row("bell", "bell:phi+", &report);
  EXPECT_EQ(row.rfind("qcorr-csv-1,bell,bell:phi+,,,,,2,,,,1,", 0), 0u) << row;
  EXPECT_EQ(csv_row("werner", "0.5", nullptr, "boom"), "qcorr-csv-1,werner,0.5,,,,,,,,,,error:boom");
}

TEST(IndexSet, Parsing) {
  EXPECT_EQ(parse_index_set("A"), (IndexSet{0}));
  EXPECT_EQ(parse_index_set("b,C"), (IndexSet{1, 2}));
  EXPECT_EQ(parse_index_set("0,2"), (IndexSet{0, 2}));
  EXPECT_THROW(parse_index_set("1x"), Error);
}

TEST(ReportJson, CarriesBasesAsAnglesAndVectors) {
  MeasureRequest req;
  req.targets = parse_measures("all");
  const auto report = compute_report(instantiate(family::Bell{}), req);
  const auto j = report_to_json(report);
  EXPECT_EQ(j["format"], "qcorr-report-1");
  EXPECT_EQ(j["angle_units"], "radians");
  const auto& basis = j["optimal_bases"]["D"];
  ASSERT_EQ(basis.size(), 2u);
  EXPECT_EQ(basis[0]["angles"].size(), 2u);
  EXPECT_EQ(basis[0]["vectors"].size(), 2u);
  EXPECT_EQ(basis[0]["vectors"][0].size(), 2u);
  EXPECT_TRUE(j["closest_states"].contains("sigma"));
  EXPECT_TRUE(j["closest_states"].contains("chi_rho"));
  EXPECT_TRUE(j.contains("separable_certificate"));
  EXPECT_NEAR(j["values"]["T"].get<double>(), 2.0, 1e-12);
}
