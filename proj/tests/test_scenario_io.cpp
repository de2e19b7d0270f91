// Copyright 2026 The sepmeas Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sepmeas/scenario_io.hpp"

#include <string>

#include "doctest.h"

using namespace sepmeas;

namespace {

Scenario sample_scenario(std::uint64_t seed = 7) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.dims = {2, 3};
  cfg.states_per_subsystem = {2, 2};
  cfg.povm_outcomes = 3;
  return random_scenario(cfg);
}

}  // namespace

TEST_CASE("scenario serialization round-trips on canonical form") {
  const Scenario s = sample_scenario();
  const Json j = scenario_to_json(s);
  const Scenario parsed = scenario_from_json(j);
  CHECK(scenario_to_json(parsed).dump() == j.dump());

  // The parsed scenario behaves identically.
  const TrialResult a = run_trial(s, 1);
  const TrialResult b = run_trial(parsed, 1);
  CHECK(trial_to_json(a).dump() == trial_to_json(b).dump());
}

TEST_CASE("parse errors cite the field path") {
  Json j = scenario_to_json(sample_scenario());

  SUBCASE("missing field") {
    j["subsystems"][0].erase("dim");
    CHECK_THROWS_WITH_AS(scenario_from_json(j),
                         doctest::Contains("subsystems[0].dim"), ScenarioParseError);
  }
  SUBCASE("wrong type") {
    j["subsystems"][1]["priors"][0] = "a half";
    CHECK_THROWS_WITH_AS(scenario_from_json(j),
                         doctest::Contains("subsystems[1].priors[0]"),
                         ScenarioParseError);
  }
  SUBCASE("bad matrix shape") {
    j["joint_povm"]["elements"][0]["matrix"][0].erase(0);
    CHECK_THROWS_WITH_AS(scenario_from_json(j),
                         doctest::Contains("joint_povm.elements[0].matrix[0]"),
                         ScenarioParseError);
  }
  SUBCASE("unsupported version") {
    j["version"] = 99;
    CHECK_THROWS_AS(scenario_from_json(j), ScenarioParseError);
  }
  SUBCASE("single subsystem") {
    j["subsystems"].erase(1);
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("K >= 2"),
                         ScenarioParseError);
  }
}

TEST_CASE("invariant violations carry the field path") {
  Json j = scenario_to_json(sample_scenario());

  SUBCASE("state with the wrong trace") {
    j["subsystems"][0]["states"][0][0][0][0] = 5.0;
    CHECK_THROWS_WITH_AS(scenario_from_json(j),
                         doctest::Contains("subsystems[0].states[0]"),
                         InvariantViolation);
  }
  SUBCASE("priors that do not sum to one") {
    j["subsystems"][0]["priors"][0] = 0.9;
    j["subsystems"][0]["priors"][1] = 0.9;
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("subsystems[0]"),
                         InvariantViolation);
  }
  SUBCASE("incomplete joint POVM") {
    for (auto& row : j["joint_povm"]["elements"][0]["matrix"])
      for (auto& entry : row)
        for (auto& part : entry) part = part.get<double>() * 0.5;
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("joint_povm"),
                         InvariantViolation);
  }
}

TEST_CASE("effective POVM export") {
  Rng rng(71);
  const Ensemble e1({random_density(2, 2, rng), random_density(2, 2, rng)}, {0.5, 0.5});
  const Ensemble e2({random_density(2, 2, rng), random_density(2, 2, rng)}, {0.5, 0.5});
  const Povm joint(4, {{OutcomeLabel{{}, 0}, CMatrix::Identity(4, 4)}});
  const Scenario s({e1, e2}, joint);

  SUBCASE("construction 1 on the identity POVM") {
    const Json j = effective_povm_to_json(construction1(s, 0));
    CHECK(j["subsystem"] == 1);
    CHECK(j["method"] == 1);
    REQUIRE(j["elements"].size() == 2);
    CHECK(j["elements"][0]["label"]["context"] == Json::array({0}));
    CHECK(j["elements"][0]["label"]["outcome"] == 0);
    CHECK(j["elements"][1]["label"]["context"] == Json::array({1}));
    CHECK(j["elements"][0]["matrix"][0][0][0].get<double>() ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["completeness_residual"].get<double>() < 1e-12);
    CHECK_FALSE(j.contains("chosen_context"));
  }
  SUBCASE("construction 2 reports its context") {
    const Json j = effective_povm_to_json(construction2(s, 1));
    CHECK(j["method"] == 2);
    CHECK(j["subsystem"] == 2);
    CHECK(j["chosen_context"] == Json::array({0}));
  }
}

TEST_CASE("config serialization round-trips") {
  GenConfig cfg;
  cfg.seed = 123456789012345ULL;
  cfg.dims = {2, 2, 2};
  cfg.states_per_subsystem = {2, 3, 2};
  cfg.povm_outcomes = 5;
  cfg.state_rank = StateRank::pure;
  cfg.prior_mode = PriorMode::uniform;

  const Json j = config_to_json(cfg, 42);
  int trials = 0;
  const GenConfig back = config_from_json(j, &trials);
  CHECK(trials == 42);
  CHECK(config_to_json(back, trials).dump() == j.dump());
}

TEST_CASE("report serialization round-trips") {
  GenConfig cfg;
  cfg.seed = 5;
  const VerificationReport r = run_suite(cfg, 8);
  const Json j = report_to_json(r, cfg, 8);

  const ParsedReport parsed = report_from_json(j);
  CHECK(report_to_json(parsed.report, parsed.config, parsed.trials_requested).dump() ==
        j.dump());
}

TEST_CASE("trial serialization round-trips, violations included") {
  TrialResult t;
  t.scenario_seed = 9;
  t.num_subsystems = 2;
  t.I_joint = 0.25;
  t.I_c1 = {0.5, 0.125};
  t.I_c2 = {0.5, 0.25};
  t.chosen_contexts = {{1}, {0}};
  t.identity_residuals["relabel_s1"] = 1e-15;
  t.slacks["thm1"] = 0.375;
  t.violations.push_back("synthetic violation for the round-trip");

  const Json j = trial_to_json(t);
  CHECK(trial_to_json(trial_from_json(j)).dump() == j.dump());
}

TEST_CASE("file io") {
  const std::string path = "io_test_scenario.json";
  const Scenario s = sample_scenario(11);
  write_json_file(path, scenario_to_json(s));
  const Scenario back = read_scenario_file(path);
  CHECK(scenario_to_json(back).dump() == scenario_to_json(s).dump());

  CHECK_THROWS_AS(read_scenario_file("does_not_exist.json"), ScenarioParseError);
}
