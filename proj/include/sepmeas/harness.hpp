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

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sepmeas/constructions.hpp"
#include "sepmeas/generators.hpp"
#include "sepmeas/probability.hpp"

namespace sepmeas {

// Per-check thresholds. Slacks must stay above, residuals below.
namespace check {
inline constexpr double info_slack = -1e-9;   // thm1, thm2, dominance, csiszar
inline constexpr double chain_slack = -1e-12;
inline constexpr double psd_slack = -1e-9;    // worst POVM-element eigenvalue
inline constexpr double relabel = 1e-12;      // entry-wise table relabeling
inline constexpr double entropy_identity = 1e-9;
inline constexpr double decomposition = 1e-9;
inline constexpr double c2_match = 1e-12;     // chosen sub-POVM MI vs slice MI
inline constexpr double completeness = 1e-8;
inline constexpr double gap_witness = 1e-6;   // "strictly better" gap in bits
}  // namespace check

/// Everything one scenario produced: information quantities, the residuals
/// of the proof identities, and the inequality slacks. A violating trial is
/// recorded through `violations`, never dropped.
///
/// Slack keys: thm1, thm2, dominance_sk, chain_sk, psd_c1_sk, psd_c2_sk,
/// and csiszar_chain (bipartite trials). Residual keys: relabel_sk,
/// entropy_joint_sk, entropy_output_sk, decomp_sk, c2_mi_match_sk,
/// complete_c1_sk, complete_c2_sk. Subsystems are numbered s1..sK.
struct TrialResult {
  std::uint64_t scenario_seed = 0;
  int num_subsystems = 0;
  double I_joint = 0.0;
  std::vector<double> I_c1;
  std::vector<double> I_c2;
  std::vector<std::vector<int>> chosen_contexts;
  std::map<std::string, double> identity_residuals;
  std::map<std::string, double> slacks;
  bool c2_tuple_extension = false;  // construction 2 ran on tuple contexts (K > 2)
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

/// Fixed-bin histogram of the construction-1 gap sum_k I_k - I_joint.
/// The first edge sits at the strictness witness threshold.
struct GapHistogram {
  static constexpr std::array<double, 6> kEdges{1e-6, 1e-3, 1e-2, 0.1, 0.3, 1.0};
  std::array<std::uint64_t, 7> counts{};

  void add(double gap);
  std::uint64_t total() const;
};

struct VerificationReport {
  std::uint64_t trials = 0;
  std::vector<TrialResult> failures;
  std::map<std::string, double> min_slacks;
  std::map<std::string, double> max_residuals;
  GapHistogram gap_histogram;
  bool construction2_tuple_extension = false;  // any trial used tuple contexts

  bool passed() const { return failures.empty(); }
  /// Trials whose construction-1 gap exceeded 1e-6 bits.
  std::uint64_t strict_gap_count() const;
  void add_trial(const TrialResult& t);
};

/// Runs every identity and inequality check on one scenario. Deterministic;
/// numerical-validity errors propagate with the seed attached.
TrialResult run_trial(const Scenario& s, std::uint64_t seed = 0);

/// run_trial over `trials` seeded scenarios; trial i uses cfg.seed + i.
/// Trials run in parallel and merge in index order, so the report is a pure
/// function of (cfg, trials). A failed trial never aborts the suite.
VerificationReport run_suite(const GenConfig& cfg, int trials, int n_threads = 0);

/// Two reports combined as if their trials had run in one suite.
VerificationReport merge(const VerificationReport& a, const VerificationReport& b);

struct QkdDemoResult {
  TrialResult trial;
  std::string summary;
};

/// BB84 x BB84 source against the Bell-basis joint measurement: the
/// collective attack on two raw-key signals versus the constructed
/// individual attacks.
QkdDemoResult run_qkd_demo();

}  // namespace sepmeas
