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

#pragma once

// Subcommand implementations behind the qelicit command-line tool. Each
// returns an exit code and a JSON document; the tool handles IO.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qelicit/json_io.hpp"
#include "qelicit/markets.hpp"
#include "qelicit/registry.hpp"

namespace qelicit::harness {

using json::Json;

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2 };

/// Bad command-line input (unknown names, malformed overrides).
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::vector<Eigen::Index> dims{2, 3, 4};
  std::size_t trials = 10000;
  std::vector<std::string> scores;  // empty: the whole registry
  std::string property = "eigenvalues";
  std::string out;
  std::string tol_overrides;  // "key=value,key=value"

  void validate() const {
    if (trials < 1) throw UsageError("trials must be at least 1");
    if (dims.empty()) throw UsageError("dims must not be empty");
    for (auto d : dims) {
      if (d < 1) throw UsageError("dims must each be at least 1");
    }
  }
};

struct Outcome {
  int exit_code = kOk;
  Json doc;
};

/// Applies "key=value" overrides (comma separated) to a check configuration.
inline void apply_tolerance_overrides(CheckConfig& cfg, const std::string& overrides) {
  std::stringstream ss(overrides);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("tolerance override \"" + item + "\" is not key=value");
    const std::string key = item.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw UsageError("tolerance override \"" + item + "\" has a non-numeric value");
    }
    if (!(value >= 0.0)) throw UsageError("tolerance override \"" + key + "\" must be non-negative");
    if (key == "margin") cfg.margin = value;
    else if (key == "tie_gap") cfg.tie_gap = value;
    else if (key == "distinct_distance") cfg.distinct_distance = value;
    else if (key == "equivalence_tol") cfg.equivalence_tol = value;
    else if (key == "invariance_tol") cfg.invariance_tol = value;
    else if (key == "linearity_tol") cfg.linearity_tol = value;
    else if (key == "subgradient_margin") cfg.subgradient_margin = value;
    else throw UsageError("unknown tolerance \"" + key + "\"");
  }
}

namespace detail {

inline void absorb(ScoreReport& into, ScoreReport part, std::size_t max_recorded) {
  into.pairs += part.pairs;
  into.trials += part.trials;
  into.max_gap = std::max(into.max_gap, part.max_gap);
  into.violation_count += part.violation_count;
  for (auto& v : part.violations) {
    if (into.violations.size() < max_recorded) into.violations.push_back(std::move(v));
  }
}

enum class Check { truthful, strict, unitary, implementable };

inline const char* check_name(Check c) {
  switch (c) {
    case Check::truthful: return "truthfulness";
    case Check::strict: return "strict-truthfulness";
    case Check::unitary: return "unitary-invariance";
    default: return "implementability";
  }
}

inline bool expected_verdict(const ExpectedVerdicts& e, Check c) {
  switch (c) {
    case Check::truthful: return e.truthful;
    case Check::strict: return e.strictly_truthful;
    case Check::unitary: return e.unitary_invariant;
    default: return e.implementable;
  }
}

inline ScoreReport run_check(const AnyScore& score, Check c, const CheckConfig& cfg) {
  return std::visit(
      [&](const auto& s) {
        switch (c) {
          case Check::truthful: return truthfulness_check(s, cfg, TruthMode::weak);
          case Check::strict: return truthfulness_check(s, cfg, TruthMode::strict);
          case Check::unitary: return unitary_invariance_check(s, cfg);
          default: return linearity_check(s, cfg);
        }
      },
      score);
}

}  // namespace detail

/// Runs truthfulness (weak and strict), unitary invariance and
/// implementability for each named score, one dimension at a time (fixed
/// scores depend on the dimension). Trials are split evenly over dims.
inline Outcome cmd_verify(const RunConfig& config) {
  config.validate();
  CheckConfig base;
  base.seed = config.seed;
  apply_tolerance_overrides(base, config.tol_overrides);
  const auto names = config.scores.empty() ? score_names() : config.scores;
  std::vector<const ScoreEntry*> entries;
  for (const auto& n : names) {
    const auto* e = find_score(n);
    if (!e) throw UsageError("unknown score \"" + n + "\"");
    entries.push_back(e);
  }
  const std::size_t per_dim = std::max<std::size_t>(1, config.trials / config.dims.size());
  Json scores = Json::array();
  bool all_match = true;
  for (const auto* e : entries) {
    Json checks = Json::array();
    for (auto c : {detail::Check::truthful, detail::Check::strict, detail::Check::unitary,
                   detail::Check::implementable}) {
      ScoreReport merged;
      merged.name = e->name;
      merged.check = detail::check_name(c);
      merged.dims = config.dims;
      for (auto d : config.dims) {
        CheckConfig cfg = base;
        cfg.dims = {d};
        cfg.trials = per_dim;
        cfg.seed = mix64(config.seed ^ static_cast<std::uint64_t>(d));
        detail::absorb(merged, detail::run_check(e->make(d), c, cfg), cfg.max_recorded);
      }
      const bool expected = detail::expected_verdict(e->expected, c);
      const bool match = merged.pass() == expected;
      all_match = all_match && match;
      checks.push_back(Json{{"check", merged.check},
                            {"expected", expected ? "pass" : "fail"},
                            {"observed", merged.pass() ? "pass" : "fail"},
                            {"match", match},
                            {"report", json::score_report(merged)}});
    }
    scores.push_back(Json{{"name", e->name}, {"checks", std::move(checks)}});
  }
  Json dims = Json::array();
  for (auto d : config.dims) dims.push_back(d);
  Json doc{{"command", "verify"},
           {"seed", config.seed},
           {"trials", config.trials},
           {"dims", std::move(dims)},
           {"all_match", all_match},
           {"scores", std::move(scores)}};
  return {all_match ? kOk : kMismatch, std::move(doc)};
}

// ---------------------------------------------------------------------------
// Worked examples
// ---------------------------------------------------------------------------

/// The example state, (1/3)|-><-| + (2/3)|1><1|.
inline DensityMatrix example_state() {
  RealMatrix m(2, 2);
  m << 1.0 / 6, -1.0 / 6, -1.0 / 6, 5.0 / 6;
  return DensityMatrix(HermitianMatrix::from_real(m));
}

/// The other Hermitian reading of the printed example matrix,
/// (1/3)|+><+| + (2/3)|1><1|.
inline DensityMatrix example_state_plus() {
  RealMatrix m(2, 2);
  m << 1.0 / 6, 1.0 / 6, 1.0 / 6, 5.0 / 6;
  return DensityMatrix(HermitianMatrix::from_real(m));
}

struct ExampleRow {
  std::string name;
  Json expected;
  Json observed;
  bool pass = false;
};

inline bool close_vec(const RealVector& a, const RealVector& b, double tol) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

inline std::vector<ExampleRow> worked_example_rows() {
  std::vector<ExampleRow> rows;
  auto dist_row = [&](const std::string& name, const DensityMatrix& rho, const Measurement& mu,
                      RealVector want) {
    const RealVector got = apply_measurement(mu, rho).probs();
    rows.push_back({name, json::vector(want), json::vector(got), close_vec(got, want, 1e-12)});
  };
  RealVector std_want(2), had_minus(2), had_plus(2);
  std_want << 1.0 / 6, 5.0 / 6;
  had_minus << 1.0 / 3, 2.0 / 3;
  had_plus << 2.0 / 3, 1.0 / 3;
  const auto hadamard = basis_pvm(UnitaryMatrix::hadamard());
  dist_row("standard basis, [[1/6,-1/6],[-1/6,5/6]]", example_state(), standard_basis_pvm(2), std_want);
  dist_row("hadamard basis, [[1/6,-1/6],[-1/6,5/6]]", example_state(), hadamard, had_minus);
  dist_row("standard basis, [[1/6,1/6],[1/6,5/6]]", example_state_plus(), standard_basis_pvm(2), std_want);
  dist_row("hadamard basis, [[1/6,1/6],[1/6,5/6]]", example_state_plus(), hadamard, had_plus);

  const auto rho1 = DensityMatrix::diagonal(RealVector::LinSpaced(2, 0.25, 0.75));
  const auto rho2 = DensityMatrix::diagonal(RealVector::LinSpaced(2, 0.75, 0.25));
  for (const auto& prop : {eigenvalue_property(), top_eigenvalue_property()}) {
    const auto w = level_set_witness(prop, rho1, rho2, 0.5);
    rows.push_back({"level set, " + prop.name + ", Diag(1,3)/4 vs Diag(3,1)/4",
                    Json{{"report", prop.name == "eigenvalues" ? json::vector(RealVector::LinSpaced(2, 0.75, 0.25))
                                                               : json::vector(scalar_report(0.75))},
                         {"mix", prop.name == "eigenvalues" ? json::vector(RealVector::Constant(2, 0.5))
                                                            : json::vector(scalar_report(0.5))},
                         {"counterexample", true}},
                    Json{{"report", json::vector(w.report1)},
                         {"mix", json::vector(w.report_mix)},
                         {"counterexample", w.is_counterexample}},
                    w.is_counterexample && close_vec(w.report_mix, prop.name == "eigenvalues"
                                                                       ? RealVector::Constant(2, 0.5)
                                                                       : scalar_report(0.5),
                                                     1e-12)});
  }

  {
    Rng rng = stream_rng(2024, 0);
    const auto report = random_density(3, 3, rng);
    const auto belief = random_density(3, 2, rng);
    const double formula = 2.0 * hs_inner(report, belief) - hs_inner(report, report);
    const double got = binary_brier().expected(report, belief).value();
    const double loss = binary_brier().expected(belief, belief).value() - got;
    const double dist2 = std::pow(frobenius_distance(report, belief), 2);
    rows.push_back({"binary Brier, 2<r,p> - <r,r> and loss = |p - r|^2",
                    Json{{"score", json::number(formula)}, {"loss", json::number(dist2)}},
                    Json{{"score", json::number(got)}, {"loss", json::number(loss)}},
                    std::abs(got - formula) <= 1e-10 && std::abs(loss - dist2) <= 1e-10});
  }

  {
    const auto belief = DensityMatrix::diagonal((RealVector(2) << 0.6, 0.4).finished());
    const auto vertex = DensityMatrix::diagonal((RealVector(2) << 1.0, 0.0).finished());
    const double s3_lie = ml::s3().expected(vertex, belief).value();
    const double s3_truth = ml::s3().expected(belief, belief).value();
    rows.push_back({"S3 trace score, Diag(0.6,0.4) vs report Diag(1,0)",
                    Json{{"report", 0.6}, {"truth", 0.52}, {"min_gap", 0.08}},
                    Json{{"report", json::number(s3_lie)}, {"truth", json::number(s3_truth)},
                         {"gap", json::number(s3_lie - s3_truth)}},
                    std::abs(s3_lie - 0.6) <= 1e-12 && std::abs(s3_truth - 0.52) <= 1e-12 &&
                        s3_lie - s3_truth >= 0.08 - 1e-12});
    const ExtendedReal s5_lie = ml::s5().expected(vertex, belief);
    const ExtendedReal s5_truth = ml::s5().expected(belief, belief);
    rows.push_back({"S5, Diag(0.6,0.4) vs report Diag(1,0)",
                    Json{{"report", json::number(std::log(0.6))}, {"truth", json::number(std::log(0.52))}},
                    Json{{"report", json::number(s5_lie)}, {"truth", json::number(s5_truth)}},
                    extended_close(s5_lie, std::log(0.6), 1e-12) &&
                        extended_close(s5_truth, std::log(0.52), 1e-12)});
  }
  return rows;
}

inline Outcome cmd_paper_examples() {
  Json rows = Json::array();
  bool all = true;
  for (const auto& r : worked_example_rows()) {
    all = all && r.pass;
    rows.push_back(Json{{"name", r.name}, {"expected", r.expected}, {"observed", r.observed}, {"pass", r.pass}});
  }
  return {all ? kOk : kMismatch, Json{{"command", "paper-examples"}, {"all_pass", all}, {"rows", std::move(rows)}}};
}

// ---------------------------------------------------------------------------
// Measurement sampling, markets, witnesses
// ---------------------------------------------------------------------------

/// Counts of `samples` independent outcomes of mu on rho.
inline Outcome cmd_measure(const DensityMatrix& rho, const Measurement& mu, std::size_t samples,
                           std::uint64_t seed) {
  const auto p = apply_measurement(mu, rho);
  std::vector<std::size_t> counts(mu.size(), 0);
  Rng rng = stream_rng(seed, 0, 31);
  for (std::size_t i = 0; i < samples; ++i) ++counts[sample_index(p, rng)];
  Json c = Json::array();
  for (auto v : counts) c.push_back(v);
  return {kOk, Json{{"command", "measure"},
                    {"dim", rho.dim()},
                    {"samples", samples},
                    {"seed", seed},
                    {"probabilities", json::vector(p.probs())},
                    {"counts", std::move(c)}}};
}

/// Scenario {dim, cost: "lmsr", trades: [matrix...], truth: matrix} to a
/// per-trade ledger of cost, payoff <R, rho> and price state.
inline Outcome cmd_market(const Json& scenario) {
  if (!scenario.is_object() || !scenario.contains("trades") || !scenario.contains("truth")) {
    throw DomainError("market scenario needs \"trades\" and \"truth\"");
  }
  if (scenario.value("cost", std::string("lmsr")) != "lmsr") {
    throw DomainError("market scenario: only cost \"lmsr\" is supported");
  }
  const DensityMatrix truth = json::parse_density(scenario.at("truth"));
  const Eigen::Index n = scenario.value("dim", truth.dim());
  require_same_dim(n, truth.dim(), "market scenario truth");
  MarketState market(n);
  Json ledger = Json::array();
  double total_cost = 0.0, total_payoff = 0.0;
  std::size_t index = 0;
  for (const auto& t : scenario.at("trades")) {
    const HermitianMatrix r = json::parse_hermitian(t);
    const double c = market.trade(r);
    const double pay = bundle_expected_payoff(r, truth);
    total_cost += c;
    total_payoff += pay;
    ledger.push_back(Json{{"trade", index++},
                          {"cost", json::number(c)},
                          {"payoff", json::number(pay)},
                          {"net", json::number(pay - c)},
                          {"price", json::matrix(market.price().matrix())}});
  }
  const double loss = market.maker_loss(truth);
  const double telescoped = market.cost() - std::log(static_cast<double>(n));
  return {kOk, Json{{"command", "market-sim"},
                    {"dim", n},
                    {"cost", "lmsr"},
                    {"ledger", std::move(ledger)},
                    {"total_cost", json::number(total_cost)},
                    {"total_payoff", json::number(total_payoff)},
                    {"cost_telescoping_residual", json::number(total_cost - telescoped)},
                    {"maker_loss", json::number(loss)},
                    {"maker_loss_bound", json::number(std::log(static_cast<double>(n)))}}};
}

/// Searches `trials` probes per dimension for a level-set counterexample.
inline Outcome cmd_witness(const RunConfig& config) {
  config.validate();
  const auto& reg = property_registry();
  const auto it = reg.find(config.property);
  if (it == reg.end()) throw UsageError("unknown property \"" + config.property + "\"");
  Json results = Json::array();
  for (auto d : config.dims) {
    const auto prop = it->second(d);
    const auto found = find_level_set_witness(prop, d, config.trials, config.seed);
    Json entry{{"property", prop.name}, {"dim", d}, {"probes", found.probes_used}};
    if (found.found) {
      entry["rho1"] = json::matrix(found.rho1.matrix());
      entry["rho2"] = json::matrix(found.rho2.matrix());
      entry["t"] = json::number(found.t);
      entry["reports"] = Json{{"rho1", json::vector(found.witness.report1)},
                              {"rho2", json::vector(found.witness.report2)},
                              {"mix", json::vector(found.witness.report_mix)}};
      entry["verdict"] = "counterexample";
    } else {
      entry["verdict"] = "none-found";
    }
    results.push_back(std::move(entry));
  }
  return {kOk, Json{{"command", "witness"}, {"seed", config.seed}, {"results", std::move(results)}}};
}

}  // namespace qelicit::harness
