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

#pragma once

#include <string>

#include "json.hpp"
#include "sepmeas/constructions.hpp"
#include "sepmeas/generators.hpp"
#include "sepmeas/harness.hpp"
#include "sepmeas/qcore.hpp"

namespace sepmeas {

// Field order in emitted documents is fixed, so serialization is
// byte-deterministic and parse-then-serialize is the identity on canonical
// files. Matrices are nested arrays of [real, imaginary] pairs.
using Json = nlohmann::ordered_json;

inline constexpr int kScenarioFileVersion = 1;

/// Malformed document: bad JSON, missing or mistyped fields. Exit code 2
/// territory. The message cites the field path.
class ScenarioParseError : public Error {
 public:
  ScenarioParseError(const std::string& path, const std::string& detail)
      : Error("parse error at " + path + ": " + detail), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Well-formed document describing an invalid object (non-PSD state,
/// incomplete POVM, ...). Exit code 1 territory.
class InvariantViolation : public Error {
 public:
  InvariantViolation(const std::string& path, const std::string& detail)
      : Error("invariant violation at " + path + ": " + detail), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);
Scenario read_scenario_file(const std::string& path);

Json effective_povm_to_json(const EffectivePovm& e);

Json config_to_json(const GenConfig& cfg, int trials);
GenConfig config_from_json(const Json& j, int* trials = nullptr);

Json trial_to_json(const TrialResult& t);
TrialResult trial_from_json(const Json& j);

Json report_to_json(const VerificationReport& r, const GenConfig& cfg, int trials);

struct ParsedReport {
  GenConfig config;
  int trials_requested = 0;
  VerificationReport report;
};
ParsedReport report_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace sepmeas
