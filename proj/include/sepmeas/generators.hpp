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

#include <cstdint>
#include <random>
#include <vector>

#include "sepmeas/qcore.hpp"

namespace sepmeas {

enum class StateRank { full, pure };
enum class PriorMode { uniform, random };

struct GenConfig {
  std::uint64_t seed = 1;
  std::vector<int> dims{2, 2};
  std::vector<int> states_per_subsystem{2, 2};
  int povm_outcomes = 4;
  StateRank state_rank = StateRank::full;
  PriorMode prior_mode = PriorMode::random;
};

/// Deterministic stream: std::mt19937_64 with Box-Muller Gaussians.
/// Identical seeds give identical draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal via Box-Muller.
  double gaussian();
  /// Independent N(0,1) real and imaginary parts.
  Complex cgaussian();

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// G G^dagger / Tr(G G^dagger) for a dim x rank matrix G of independent
/// complex Gaussians.
DensityMatrix random_density(int dim, int rank, Rng& rng);

/// Draw PSD G_b = A_b A_b^dagger, set S = sum_b G_b, and return
/// { S^{-1/2} G_b S^{-1/2} }. S^{-1/2} goes through an eigendecomposition
/// with eigenvalue floor 1e-12; a badly conditioned S is redrawn, up to ten
/// times.
Povm random_povm(int dim, int n_outcomes, Rng& rng);

/// The four BB84 signal states |0>, |1>, |+>, |-> with uniform priors.
Ensemble bb84_ensemble();

/// Rank-1 projectors onto the two-qubit Bell basis (Phi+, Phi-, Psi+, Psi-).
Povm bell_povm();

/// A full scenario drawn deterministically from cfg.seed: one ensemble per
/// subsystem followed by the joint POVM, all from a single stream.
Scenario random_scenario(const GenConfig& cfg);

}  // namespace sepmeas
