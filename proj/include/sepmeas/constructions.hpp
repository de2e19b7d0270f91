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

#include <optional>
#include <vector>

#include "sepmeas/probability.hpp"
#include "sepmeas/qcore.hpp"

namespace sepmeas {

enum class Method { construction1, construction2 };

/// A per-subsystem POVM induced from the joint POVM. construction1 carries
/// one element per (context tuple, outcome); construction2 fixes a single
/// context tuple for all outcomes.
struct EffectivePovm {
  int subsystem = 0;  // 0-based
  Method method = Method::construction1;
  Povm povm;
  std::optional<std::vector<int>> chosen_context;  // construction2 only
};

/// Every tuple of state indices for the subsystems other than k, ordered
/// lexicographically with the leftmost subsystem slowest.
std::vector<std::vector<int>> context_tuples(const Scenario& s, int k);

/// Prior-weighted projected POVM for subsystem k:
///   element(ctx, b) = Tr_{l != k}[ (x_l phi^(l)_{ctx_l}) M_b ] * prod_{l != k} p^(l)_{ctx_l}
/// with the identity inserted at slot k. Elements are ordered context-major
/// with the joint outcome fastest, labeled (ctx, b); the result passes
/// validate_povm because the context states are normalized and their priors
/// sum to one. Elements are hermitized after the partial trace.
EffectivePovm construction1(const Scenario& s, int k);

/// Best single projected sub-POVM for subsystem k: each candidate context
/// tuple yields the sub-POVM { Tr_{l != k}[(x_l phi_l) M_b] : b } without
/// prior weights, scored by the mutual information it attains against
/// subsystem k's ensemble. The maximizer wins; candidates within 1e-12 bits
/// of the running maximum count as ties and resolve to the lowest
/// (lexicographic) context tuple. A zero-prior context is still a legal
/// candidate. Bipartite contexts are single-index tuples; for K > 2 the
/// context is the full tuple over the other subsystems.
EffectivePovm construction2(const Scenario& s, int k);

/// Two-axis distribution Pr{A_k = a, B_k = j} = Tr[phi^(k)_a M_j] p^(k)_a
/// over (state index, element index of e.povm).
JointDistribution induced_distribution(const Scenario& s, const EffectivePovm& e);

}  // namespace sepmeas
