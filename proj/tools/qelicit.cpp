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


// qelicit: verification harness for quantum scoring rules.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qelicit/harness.hpp"

namespace {

using qelicit::harness::Json;
using qelicit::harness::Outcome;

void emit(const Outcome& o, const std::string& out) {
  if (out.empty()) {
    std::cout << o.doc.dump(2) << '\n';
  } else {
    qelicit::json::write_file(out, o.doc);
  }
}

void print_examples_table(const Json& doc) {
  for (const auto& row : doc.at("rows")) {
    std::cout << (row.at("pass").get<bool>() ? "PASS  " : "FAIL  ") << row.at("name").get<std::string>()
              << "\n      expected " << row.at("expected").dump() << "\n      observed "
              << row.at("observed").dump() << '\n';
  }
}

void print_verify_summary(const Json& doc) {
  for (const auto& s : doc.at("scores")) {
    for (const auto& c : s.at("checks")) {
      std::cerr << (c.at("match").get<bool>() ? "ok        " : "MISMATCH  ") << s.at("name").get<std::string>()
                << "  " << c.at("check").get<std::string>() << "  expected "
                << c.at("expected").get<std::string>() << ", observed "
                << c.at("observed").get<std::string>() << '\n';
    }
  }
}

qelicit::Measurement measurement_arg(const std::string& arg, Eigen::Index n) {
  if (arg == "standard" || arg == "hadamard" || arg == "canonical") {
    return qelicit::json::parse_measurement(Json(arg), n);
  }
  return qelicit::json::parse_measurement(qelicit::json::read_file(arg), n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum scoring rules: truthfulness checks, worked examples, measurement and market simulation"};
  app.require_subcommand(1);

  qelicit::harness::RunConfig cfg;
  std::string out;

  auto* verify = app.add_subcommand("verify", "Run truthfulness, invariance and implementability checks");
  verify->add_option("--score", cfg.scores, "Score names (repeatable or comma separated); default: all")
      ->delimiter(',');
  verify->add_option("--dims", cfg.dims, "Dimensions, comma separated")->delimiter(',');
  verify->add_option("--trials", cfg.trials, "Trials per check, split across dims");
  verify->add_option("--seed", cfg.seed, "Seed");
  verify->add_option("--tol-overrides", cfg.tol_overrides, "Tolerance overrides, key=value[,key=value]");
  verify->add_option("--out", out, "Write the JSON report here instead of stdout");

  auto* examples = app.add_subcommand("paper-examples", "Reproduce the worked examples");
  examples->add_option("--out", out, "Also write the JSON report here");

  std::string matrix_path, meas_arg = "standard";
  std::size_t samples = 1000000;
  auto* measure = app.add_subcommand("measure", "Sample outcomes of a measurement on a state");
  measure->add_option("--matrix", matrix_path, "Density matrix JSON file")->required();
  measure->add_option("--measurement", meas_arg, "standard | hadamard | canonical | measurement JSON file");
  measure->add_option("--samples", samples, "Number of draws");
  measure->add_option("--seed", cfg.seed, "Seed");
  measure->add_option("--out", out, "Write the JSON counts here instead of stdout");

  std::string scenario_path;
  auto* market = app.add_subcommand("market-sim", "Run a quantum LMSR market scenario");
  market->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  market->add_option("--out", out, "Write the JSON ledger here instead of stdout");

  auto* witness = app.add_subcommand("witness", "Search for level-set convexity counterexamples");
  cfg.trials = 10000;
  std::size_t probes = 100;
  witness->add_option("--property", cfg.property, "Property name");
  witness->add_option("--dims", cfg.dims, "Dimensions, comma separated")->delimiter(',');
  witness->add_option("--trials", probes, "Probes per dimension");
  witness->add_option("--seed", cfg.seed, "Seed");
  witness->add_option("--out", out, "Write the JSON result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qelicit::harness::kUsage;
  }

  try {
    if (*verify) {
      const auto o = qelicit::harness::cmd_verify(cfg);
      print_verify_summary(o.doc);
      emit(o, out);
      return o.exit_code;
    }
    if (*examples) {
      const auto o = qelicit::harness::cmd_paper_examples();
      print_examples_table(o.doc);
      if (!out.empty()) qelicit::json::write_file(out, o.doc);
      return o.exit_code;
    }
    if (*measure) {
      const auto rho = qelicit::json::parse_density(qelicit::json::read_file(matrix_path));
      const auto o = qelicit::harness::cmd_measure(rho, measurement_arg(meas_arg, rho.dim()), samples, cfg.seed);
      emit(o, out);
      return o.exit_code;
    }
    if (*market) {
      const auto o = qelicit::harness::cmd_market(qelicit::json::read_file(scenario_path));
      emit(o, out);
      return o.exit_code;
    }
    if (*witness) {
      cfg.trials = probes;
      const auto o = qelicit::harness::cmd_witness(cfg);
      emit(o, out);
      return o.exit_code;
    }
  } catch (const qelicit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qelicit::harness::kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return qelicit::harness::kUsage;
  }
  return qelicit::harness::kUsage;
}
