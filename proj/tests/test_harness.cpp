// Copyright 2026 The qelicit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <cstdio>
#include <filesystem>

#include <gtest/gtest.h>

#include "qelicit/harness.hpp"

namespace qelicit::harness {
namespace {

const std::string kData = QELICIT_DATA_DIR;

TEST(ToleranceOverrides, ParsesKnownKeys) {
  CheckConfig cfg;
  apply_tolerance_overrides(cfg, "margin=1e-6,tie_gap=2e-9,,linearity_tol=0.5");
  EXPECT_EQ(cfg.margin, 1e-6);
  EXPECT_EQ(cfg.tie_gap, 2e-9);
  EXPECT_EQ(cfg.linearity_tol, 0.5);
  EXPECT_EQ(cfg.equivalence_tol, 1e-8);
}

TEST(ToleranceOverrides, RejectsMalformedInput) {
  CheckConfig cfg;
  EXPECT_THROW(apply_tolerance_overrides(cfg, "margin"), UsageError);
  EXPECT_THROW(apply_tolerance_overrides(cfg, "margin=abc"), UsageError);
  EXPECT_THROW(apply_tolerance_overrides(cfg, "margin=1e-6x"), UsageError);
  EXPECT_THROW(apply_tolerance_overrides(cfg, "margin=-1"), UsageError);
  EXPECT_THROW(apply_tolerance_overrides(cfg, "bogus=1"), UsageError);
}

TEST(Verify, MatchingVerdictsExitZero) {
  RunConfig cfg;
  cfg.scores = {"binary-brier", "ml:s3"};
  cfg.dims = {2, 3};
  cfg.trials = 400;
  const auto out = cmd_verify(cfg);
  EXPECT_EQ(out.exit_code, kOk);
  EXPECT_TRUE(out.doc.at("all_match").get<bool>());
  const auto& s3 = out.doc.at("scores").at(1);
  EXPECT_EQ(s3.at("name"), "ml:s3");
  EXPECT_EQ(s3.at("checks").at(0).at("check"), "truthfulness");
  EXPECT_EQ(s3.at("checks").at(0).at("observed"), "fail");
  EXPECT_EQ(s3.at("checks").at(0).at("report").at("trials"), 400);
  EXPECT_FALSE(s3.at("checks").at(0).at("report").at("violations").empty());
}

TEST(Verify, LooseMarginProducesMismatch) {
  RunConfig cfg;
  cfg.scores = {"ml:s3"};
  cfg.dims = {2};
  cfg.trials = 200;
  cfg.tol_overrides = "margin=10";
  const auto out = cmd_verify(cfg);
  EXPECT_EQ(out.exit_code, kMismatch);
  EXPECT_FALSE(out.doc.at("all_match").get<bool>());
}

TEST(Verify, UsageErrors) {
  RunConfig cfg;
  cfg.scores = {"nope"};
  EXPECT_THROW(cmd_verify(cfg), UsageError);
  RunConfig empty;
  empty.dims = {};
  EXPECT_THROW(cmd_verify(empty), UsageError);
  RunConfig zero;
  zero.trials = 0;
  EXPECT_THROW(cmd_verify(zero), UsageError);
}

TEST(Verify, SameSeedSameDocument) {
  RunConfig cfg;
  cfg.scores = {"ml:s4"};
  cfg.dims = {2};
  cfg.trials = 200;
  EXPECT_EQ(cmd_verify(cfg).doc.dump(), cmd_verify(cfg).doc.dump());
}

TEST(Registry, NamesAreUniqueAndResolvable) {
  const auto names = score_names();
  EXPECT_EQ(names.size(), 11u);
  for (const auto& n : names) {
    ASSERT_NE(find_score(n), nullptr);
    EXPECT_EQ(std::count(names.begin(), names.end(), n), 1);
  }
  EXPECT_EQ(find_score("missing"), nullptr);
  for (const auto& [name, make] : property_registry()) {
    EXPECT_NO_THROW(make(3)(DensityMatrix::maximally_mixed(3))) << name;
  }
}

TEST(Examples, AllRowsPass) {
  const auto out = cmd_paper_examples();
  EXPECT_EQ(out.exit_code, kOk);
  for (const auto& row : out.doc.at("rows")) EXPECT_TRUE(row.at("pass").get<bool>()) << row.at("name");
}

TEST(Measure, CountsSumAndAreDeterministic) {
  const auto rho = json::parse_density(json::read_file(kData + "/example_state.json"));
  const auto mu = json::parse_measurement("hadamard", 2);
  const auto a = cmd_measure(rho, mu, 20000, 9);
  const auto b = cmd_measure(rho, mu, 20000, 9);
  EXPECT_EQ(a.doc.dump(), b.doc.dump());
  const auto counts = a.doc.at("counts");
  EXPECT_EQ(counts.at(0).get<std::size_t>() + counts.at(1).get<std::size_t>(), 20000u);
  EXPECT_NEAR(a.doc.at("probabilities").at(0).get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(counts.at(0).get<double>() / 20000.0, 1.0 / 3.0, 0.02);
}

TEST(Market, FiveTradeScenario) {
  const auto out = cmd_market(json::read_file(kData + "/market_five_trades.json"));
  EXPECT_EQ(out.exit_code, kOk);
  EXPECT_EQ(out.doc.at("ledger").size(), 5u);
  EXPECT_NEAR(out.doc.at("cost_telescoping_residual").get<double>(), 0.0, 1e-12);
  EXPECT_LE(out.doc.at("maker_loss").get<double>(), std::log(2.0) + 1e-12);
  double net = 0.0;
  for (const auto& row : out.doc.at("ledger")) net += row.at("net").get<double>();
  EXPECT_NEAR(net, out.doc.at("maker_loss").get<double>(), 1e-12);
}

TEST(Market, NoTradesAndBadScenarios) {
  const auto out = cmd_market(json::read_file(kData + "/market_no_trades.json"));
  EXPECT_TRUE(out.doc.at("ledger").empty());
  EXPECT_NEAR(out.doc.at("maker_loss").get<double>(), 0.0, 1e-15);
  EXPECT_THROW(cmd_market(json::Json{{"trades", json::Json::array()}}), DomainError);
  json::Json bad = json::read_file(kData + "/market_no_trades.json");
  bad["cost"] = "quadratic";
  EXPECT_THROW(cmd_market(bad), DomainError);
}

TEST(Witness, FindsCounterexampleForEntropy) {
  RunConfig cfg;
  cfg.property = "entropy";
  cfg.dims = {2, 3};
  cfg.trials = 100;
  const auto out = cmd_witness(cfg);
  for (const auto& r : out.doc.at("results")) EXPECT_EQ(r.at("verdict"), "counterexample");
  cfg.property = "expectation";
  for (const auto& r : cmd_witness(cfg).doc.at("results")) EXPECT_EQ(r.at("verdict"), "none-found");
  cfg.property = "nope";
  EXPECT_THROW(cmd_witness(cfg), UsageError);
}

TEST(Json, MatrixRoundTripAndNonFinite) {
  Rng rng = stream_rng(95, 0);
  const auto h = random_hermitian(3, rng);
  const auto text = json::matrix(h.matrix()).dump();
  const auto back = json::parse_matrix(json::Json::parse(text));
  EXPECT_EQ(back, h.matrix());
  EXPECT_EQ(json::number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(json::number(kNegInf), "-inf");
  EXPECT_EQ(json::number(std::nan("")), "nan");
}

TEST(Json, MeasurementSpecs) {
  EXPECT_EQ(json::parse_measurement("canonical", 3).size(), 9u);
  EXPECT_THROW(json::parse_measurement("hadamard", 3), DomainError);
  EXPECT_THROW(json::parse_measurement("other", 2), DomainError);
  const auto elems = json::measurement(standard_basis_pvm(2));
  EXPECT_EQ(json::parse_measurement(elems, 2).size(), 2u);
  json::Json basis{{"basis", json::matrix(UnitaryMatrix::hadamard().matrix())}};
  EXPECT_TRUE(is_pvm(json::parse_measurement(basis, 2)));
}

TEST(Json, MalformedInputs) {
  EXPECT_THROW(json::parse_matrix(json::Json{{"re", {{1.0, 0.0}}}}), DimensionMismatch);
  EXPECT_THROW(json::parse_matrix(json::Json::array()), DomainError);
  EXPECT_THROW(json::read_file(kData + "/does-not-exist.json"), IoError);
  const auto tmp = std::filesystem::temp_directory_path() / "qelicit_bad.json";
  {
    std::ofstream f(tmp);
    f << "{ not json";
  }
  EXPECT_THROW(json::read_file(tmp.string()), IoError);
  std::filesystem::remove(tmp);
}

}  // namespace
}  // namespace qelicit::harness
