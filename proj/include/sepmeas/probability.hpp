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

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sepmeas/qcore.hpp"

namespace sepmeas {

/// Axis indices to retain when marginalizing. Treated as a set.
using MarginalSpec = std::vector<int>;

/// Dense tables only; larger outcome spaces are out of scope.
inline constexpr std::size_t kMaxTableEntries = 10'000'000;

/// Raised when conditioning on an event with no probability mass. Callers
/// iterating over context values must skip such slices.
class ZeroProbabilitySlice : public Error {
 public:
  using Error::Error;
};

/// Dense probability table over (a_1, ..., a_K, b); row-major with the last
/// axis fastest. Entries in (-tol::prob, 0) are clipped to zero and the
/// table renormalized; anything more negative, or a total off from 1 by
/// more than tol::prob, is an error.
class JointDistribution {
 public:
  JointDistribution(std::vector<int> axis_sizes, std::vector<double> table);

  int num_axes() const { return static_cast<int>(axis_sizes_.size()); }
  const std::vector<int>& axis_sizes() const { return axis_sizes_; }
  const std::vector<double>& table() const { return table_; }
  std::size_t size() const { return table_.size(); }

  std::size_t flat_index(const std::vector<int>& idx) const;
  double at(const std::vector<int>& idx) const { return table_[flat_index(idx)]; }

 private:
  std::vector<int> axis_sizes_;
  std::vector<double> table_;
};

/// Pr{A_1=a_1,...,A_K=a_K,B=b}
///   = Tr[(phi^(1)_{a_1} x ... x phi^(K)_{a_K}) M_b] * prod_k p^(k)_{a_k}.
/// Probabilities are the real part of the trace; an imaginary residue above
/// 1e-9 signals invalid input and is an error.
JointDistribution joint_distribution(const Scenario& s);

/// Marginal over `axes`, kept in ascending axis order.
JointDistribution marginal(const JointDistribution& d, const MarginalSpec& axes);

/// Shannon entropy in bits of the marginal over `axes`, with 0 log 0 = 0.
double entropy(const JointDistribution& d, const MarginalSpec& axes);

/// I(left; right) = H(left) + H(right) - H(left,right), in bits.
/// The axis sets must be disjoint.
double mutual_information(const JointDistribution& d, const MarginalSpec& left,
                          const MarginalSpec& right);

/// I(left; right | given)
///   = H(left,given) + H(right,given) - H(left,right,given) - H(given).
double conditional_mutual_information(const JointDistribution& d,
                                      const MarginalSpec& left,
                                      const MarginalSpec& right,
                                      const MarginalSpec& given);

/// The distribution conditioned on axis = value for each pair; conditioned
/// axes stay in place with size 1. Throws ZeroProbabilitySlice when the
/// selected event has no mass.
JointDistribution conditioned(const JointDistribution& d,
                              const std::vector<std::pair<int, int>>& fixed);

/// I(left; right | axis = value), the mutual information of the
/// renormalized slice.
double mi_given_value(const JointDistribution& d, const MarginalSpec& left,
                      const MarginalSpec& right, int axis, int value);

/// Convex weight function for the generalized information measure.
/// `checked` verifies midpoint convexity on a logarithmic grid over
/// [1e-6, 1e6] (within 1e-9) before accepting the function.
struct CsiszarPhi {
  std::string name;
  std::function<double(double)> fn;

  static CsiszarPhi checked(std::string name, std::function<double(double)> fn);
  /// Phi(x) = -log2(x); reproduces Shannon mutual information.
  static CsiszarPhi shannon();
};

/// I^C(f, g) = sum_x g(x) Phi(f(x)/g(x)) with f the product of the left and
/// right marginals and g their joint; terms with g = 0 contribute nothing.
double csiszar_measure(const JointDistribution& d, const MarginalSpec& left,
                       const MarginalSpec& right, const CsiszarPhi& phi);

struct PhiConditionResult {
  bool passed = false;
  double worst = 0.0;  // min of Phi(x)+Phi(y)-Phi(xy) over the grid square
  double worst_x = 0.0;
  double worst_y = 0.0;
};

/// Evaluates Phi(x)+Phi(y)-Phi(xy) over the grid's Cartesian square;
/// passes iff the minimum is >= -1e-9.
PhiConditionResult check_phi_condition(const CsiszarPhi& phi,
                                       const std::vector<double>& grid);

/// Log-spaced grid with inclusive endpoints, `points` >= 2.
std::vector<double> log_grid(double lo, double hi, int points);

}  // namespace sepmeas
