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

#include "sepmeas/constructions.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace sepmeas {

namespace {

constexpr double kTieTol = 1e-12;  // MI ties resolve to the lowest context
constexpr double kImagResidueTol = 1e-9;

void check_subsystem(const Scenario& s, int k) {
  if (k < 0 || k >= s.num_subsystems()) {
    std::ostringstream os;
    os << "subsystem index " << k << " out of range for K = " << s.num_subsystems();
    throw Error(os.str());
  }
}

// Tr_{l != k}[ (x_l phi^(l)_{ctx_l}) M_b ] with the identity at slot k.
CMatrix projected_element(const Scenario& s, int k, const std::vector<int>& ctx,
                          const CMatrix& joint_element) {
  const std::vector<int> dims = s.dims();
  std::vector<CMatrix> factors;
  factors.reserve(dims.size());
  int c = 0;
  for (int l = 0; l < s.num_subsystems(); ++l) {
    if (l == k)
      factors.push_back(CMatrix::Identity(dims[l], dims[l]));
    else
      factors.push_back(s.subsystems()[l].states()[ctx[c++]].matrix());
  }
  const CMatrix op = tensor_all(factors) * joint_element;
  return hermitize(partial_trace(op, dims, {k}));
}

Povm validated(int dim, std::vector<PovmElement> elements, const char* who) {
  Povm povm(dim, std::move(elements));
  const PovmValidation v = validate_povm(povm);
  if (!v.passed()) {
    std::ostringstream os;
    os << who << " produced an invalid POVM: min eigenvalue " << v.worst_eigenvalue()
       << ", completeness residual " << v.completeness_residual;
    throw Error(os.str());
  }
  return povm;
}

// MI of subsystem k's ensemble measured with the given operators.
double ensemble_mi(const Ensemble& ens, const std::vector<CMatrix>& ops) {
  std::vector<double> table(static_cast<std::size_t>(ens.size()) * ops.size(), 0.0);
  for (int a = 0; a < ens.size(); ++a)
    for (std::size_t j = 0; j < ops.size(); ++j) {
      const Complex tr = (ens.states()[a].matrix() * ops[j]).trace();
      if (std::abs(tr.imag()) > kImagResidueTol)
        throw Error("sub-POVM probability has an imaginary residue");
      table[a * ops.size() + j] = std::min(tr.real(), 1.0) * ens.priors()[a];
    }
  const JointDistribution d({ens.size(), static_cast<int>(ops.size())},
                            std::move(table));
  return mutual_information(d, {0}, {1});
}

}  // namespace

std::vector<std::vector<int>> context_tuples(const Scenario& s, int k) {
  check_subsystem(s, k);
  std::vector<int> sizes;
  for (int l = 0; l < s.num_subsystems(); ++l)
    if (l != k) sizes.push_back(s.subsystems()[l].size());

  std::vector<std::vector<int>> tuples;
  std::vector<int> t(sizes.size(), 0);
  while (true) {
    tuples.push_back(t);
    int a = static_cast<int>(t.size()) - 1;
    for (; a >= 0; --a) {
      if (++t[a] < sizes[a]) break;
      t[a] = 0;
    }
    if (a < 0) break;
  }
  return tuples;
}

EffectivePovm construction1(const Scenario& s, int k) {
  check_subsystem(s, k);
  const int n_outcomes = s.joint_povm().size();

  std::vector<PovmElement> elements;
  for (const auto& ctx : context_tuples(s, k)) {
    double prior = 1.0;
    int c = 0;
    for (int l = 0; l < s.num_subsystems(); ++l)
      if (l != k) prior *= s.subsystems()[l].priors()[ctx[c++]];
    for (int b = 0; b < n_outcomes; ++b) {
      CMatrix el = projected_element(s, k, ctx, s.joint_povm()[b].matrix) * prior;
      elements.push_back({OutcomeLabel{ctx, b}, std::move(el)});
    }
  }

  return EffectivePovm{k, Method::construction1,
                       validated(s.subsystems()[k].dim(), std::move(elements),
                                 "construction1"),
                       std::nullopt};
}

EffectivePovm construction2(const Scenario& s, int k) {
  check_subsystem(s, k);
  const int n_outcomes = s.joint_povm().size();
  const Ensemble& ens = s.subsystems()[k];

  std::vector<int> best_ctx;
  std::vector<CMatrix> best_ops;
  double best_mi = -1.0;
  for (const auto& ctx : context_tuples(s, k)) {
    std::vector<CMatrix> ops;
    ops.reserve(n_outcomes);
    for (int b = 0; b < n_outcomes; ++b)
      ops.push_back(projected_element(s, k, ctx, s.joint_povm()[b].matrix));
    const double mi = ensemble_mi(ens, ops);
    if (mi > best_mi + kTieTol) {
      best_mi = mi;
      best_ctx = ctx;
      best_ops = std::move(ops);
    }
  }

  std::vector<PovmElement> elements;
  elements.reserve(best_ops.size());
  for (int b = 0; b < n_outcomes; ++b)
    elements.push_back({OutcomeLabel{best_ctx, b}, std::move(best_ops[b])});

  return EffectivePovm{k, Method::construction2,
                       validated(ens.dim(), std::move(elements), "construction2"),
                       best_ctx};
}

JointDistribution induced_distribution(const Scenario& s, const EffectivePovm& e) {
  check_subsystem(s, e.subsystem);
  const Ensemble& ens = s.subsystems()[e.subsystem];
  if (e.povm.dim() != ens.dim()) {
    std::ostringstream os;
    os << "effective POVM dimension " << e.povm.dim()
       << " does not match subsystem dimension " << ens.dim();
    throw Error(os.str());
  }

  const int n = e.povm.size();
  std::vector<double> table(static_cast<std::size_t>(ens.size()) * n, 0.0);
  for (int a = 0; a < ens.size(); ++a)
    for (int j = 0; j < n; ++j) {
      const Complex tr = (ens.states()[a].matrix() * e.povm[j].matrix).trace();
      if (std::abs(tr.imag()) > kImagResidueTol)
        throw Error("induced probability has an imaginary residue");
      table[static_cast<std::size_t>(a) * n + j] =
          std::min(tr.real(), 1.0) * ens.priors()[a];
    }
  return JointDistribution({ens.size(), n}, std::move(table));
}

}  // namespace sepmeas
