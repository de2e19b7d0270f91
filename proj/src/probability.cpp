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

#include "sepmeas/probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sepmeas {

namespace {

constexpr double kImagResidueTol = 1e-9;
constexpr double kPhiConditionTol = 1e-9;
constexpr double kConvexityTol = 1e-9;

inline double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

MarginalSpec sorted_axes(const JointDistribution& d, const MarginalSpec& axes,
                         const char* who) {
  if (axes.empty()) throw Error(std::string(who) + ": empty axis set");
  MarginalSpec s = axes;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw Error(std::string(who) + ": repeated axis index");
  if (s.front() < 0 || s.back() >= d.num_axes())
    throw Error(std::string(who) + ": axis index out of range");
  return s;
}

void require_disjoint(const MarginalSpec& a, const MarginalSpec& b, const char* who) {
  for (int x : a)
    for (int y : b)
      if (x == y) {
        std::ostringstream os;
        os << who << ": axis sets overlap at axis " << x;
        throw Error(os.str());
      }
}

MarginalSpec set_union(const MarginalSpec& a, const MarginalSpec& b) {
  MarginalSpec u = a;
  u.insert(u.end(), b.begin(), b.end());
  return u;
}

// Odometer over a multi-index; returns false after the last combination.
bool advance(std::vector<int>& idx, const std::vector<int>& sizes) {
  for (int a = static_cast<int>(idx.size()) - 1; a >= 0; --a) {
    if (++idx[a] < sizes[a]) return true;
    idx[a] = 0;
  }
  return false;
}

}  // namespace

JointDistribution::JointDistribution(std::vector<int> axis_sizes,
                                     std::vector<double> table)
    : axis_sizes_(std::move(axis_sizes)), table_(std::move(table)) {
  if (axis_sizes_.empty()) throw Error("distribution needs at least one axis");
  std::size_t total = 1;
  for (int s : axis_sizes_) {
    if (s < 1) throw Error("axis size must be >= 1");
    total *= static_cast<std::size_t>(s);
    if (total > kMaxTableEntries)
      throw Error("distribution exceeds the dense-table cap of 1e7 entries");
  }
  if (total != table_.size()) throw Error("table size does not match axis sizes");

  double sum = 0.0;
  for (double& x : table_) {
    if (x < -tol::prob) {
      std::ostringstream os;
      os << "probability entry " << x << " below -" << tol::prob;
      throw Error(os.str());
    }
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol::prob) {
    std::ostringstream os;
    os << "probabilities sum to " << sum << ", not 1 within " << tol::prob;
    throw Error(os.str());
  }
  for (double& x : table_) x /= sum;
}

std::size_t JointDistribution::flat_index(const std::vector<int>& idx) const {
  if (idx.size() != axis_sizes_.size())
    throw Error("index rank does not match distribution rank");
  std::size_t f = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (idx[a] < 0 || idx[a] >= axis_sizes_[a]) throw Error("index out of range");
    f = f * static_cast<std::size_t>(axis_sizes_[a]) + static_cast<std::size_t>(idx[a]);
  }
  return f;
}

JointDistribution joint_distribution(const Scenario& s) {
  const int K = s.num_subsystems();
  const int n_outcomes = s.joint_povm().size();

  std::vector<int> sizes;
  sizes.reserve(K + 1);
  std::size_t total = static_cast<std::size_t>(n_outcomes);
  for (const auto& e : s.subsystems()) {
    sizes.push_back(e.size());
    total *= static_cast<std::size_t>(e.size());
    if (total > kMaxTableEntries)
      throw Error("scenario outcome space exceeds the dense-table cap of 1e7 entries");
  }
  sizes.push_back(n_outcomes);

  std::vector<double> table(total, 0.0);
  std::vector<int> a(K, 0);
  std::vector<int> input_sizes(sizes.begin(), sizes.end() - 1);
  std::size_t base = 0;
  do {
    double prior = 1.0;
    for (int k = 0; k < K; ++k) prior *= s.subsystems()[k].priors()[a[k]];
    if (prior > 0.0) {
      std::vector<CMatrix> factors;
      factors.reserve(K);
      for (int k = 0; k < K; ++k)
        factors.push_back(s.subsystems()[k].states()[a[k]].matrix());
      const CMatrix rho = tensor_all(factors);
      for (int b = 0; b < n_outcomes; ++b) {
        const Complex tr = (rho * s.joint_povm()[b].matrix).trace();
        if (std::abs(tr.imag()) > kImagResidueTol) {
          std::ostringstream os;
          os << "trace has imaginary residue " << tr.imag() << " at outcome " << b;
          throw Error(os.str());
        }
        table[base + static_cast<std::size_t>(b)] = std::min(tr.real(), 1.0);
      }
    }
    base += static_cast<std::size_t>(n_outcomes);
    // scale by the prior after the fact so zero-prior rows stay exactly zero
    if (prior != 1.0)
      for (std::size_t i = base - n_outcomes; i < base; ++i) table[i] *= prior;
  } while (advance(a, input_sizes));

  return JointDistribution(std::move(sizes), std::move(table));
}

JointDistribution marginal(const JointDistribution& d, const MarginalSpec& axes) {
  const MarginalSpec keep = sorted_axes(d, axes, "marginal");

  std::vector<int> out_sizes;
  out_sizes.reserve(keep.size());
  for (int a : keep) out_sizes.push_back(d.axis_sizes()[a]);

  // Output stride per input axis; 0 for axes being summed out.
  std::vector<std::size_t> ostride(d.num_axes(), 0);
  std::size_t s = 1;
  for (auto it = keep.rbegin(); it != keep.rend(); ++it) {
    ostride[*it] = s;
    s *= static_cast<std::size_t>(d.axis_sizes()[*it]);
  }

  std::vector<double> out(s, 0.0);
  std::vector<int> idx(d.num_axes(), 0);
  std::size_t f = 0;
  do {
    std::size_t o = 0;
    for (int a = 0; a < d.num_axes(); ++a)
      o += ostride[a] * static_cast<std::size_t>(idx[a]);
    out[o] += d.table()[f];
    ++f;
  } while (advance(idx, d.axis_sizes()));

  return JointDistribution(std::move(out_sizes), std::move(out));
}

double entropy(const JointDistribution& d, const MarginalSpec& axes) {
  const JointDistribution m = marginal(d, axes);
  double h = 0.0;
  for (double p : m.table()) h += entropy_term(p);
  return h;
}

double mutual_information(const JointDistribution& d, const MarginalSpec& left,
                          const MarginalSpec& right) {
  require_disjoint(left, right, "mutual_information");
  return entropy(d, left) + entropy(d, right) - entropy(d, set_union(left, right));
}

double conditional_mutual_information(const JointDistribution& d,
                                      const MarginalSpec& left,
                                      const MarginalSpec& right,
                                      const MarginalSpec& given) {
  require_disjoint(left, right, "conditional_mutual_information");
  require_disjoint(left, given, "conditional_mutual_information");
  require_disjoint(right, given, "conditional_mutual_information");
  return entropy(d, set_union(left, given)) + entropy(d, set_union(right, given)) -
         entropy(d, set_union(set_union(left, right), given)) - entropy(d, given);
}

JointDistribution conditioned(const JointDistribution& d,
                              const std::vector<std::pair<int, int>>& fixed) {
  if (fixed.empty()) throw Error("conditioned: nothing to condition on");
  std::vector<int> value(d.num_axes(), -1);
  for (const auto& [axis, v] : fixed) {
    if (axis < 0 || axis >= d.num_axes()) throw Error("conditioned: axis out of range");
    if (v < 0 || v >= d.axis_sizes()[axis]) throw Error("conditioned: value out of range");
    if (value[axis] != -1) throw Error("conditioned: axis fixed twice");
    value[axis] = v;
  }

  std::vector<int> out_sizes = d.axis_sizes();
  for (const auto& [axis, v] : fixed) out_sizes[axis] = 1;
  std::size_t n_out = 1;
  for (int s : out_sizes) n_out *= static_cast<std::size_t>(s);

  std::vector<double> out(n_out, 0.0);
  std::vector<std::size_t> ostride(d.num_axes(), 0);
  std::size_t s = 1;
  for (int a = d.num_axes() - 1; a >= 0; --a) {
    ostride[a] = (value[a] == -1) ? s : 0;
    s *= static_cast<std::size_t>(out_sizes[a]);
  }

  double mass = 0.0;
  std::vector<int> idx(d.num_axes(), 0);
  std::size_t f = 0;
  do {
    bool match = true;
    for (int a = 0; a < d.num_axes() && match; ++a)
      if (value[a] != -1 && idx[a] != value[a]) match = false;
    if (match) {
      std::size_t o = 0;
      for (int a = 0; a < d.num_axes(); ++a)
        o += ostride[a] * static_cast<std::size_t>(idx[a]);
      out[o] += d.table()[f];
      mass += d.table()[f];
    }
    ++f;
  } while (advance(idx, d.axis_sizes()));

  if (mass <= 0.0)
    throw ZeroProbabilitySlice("conditioning event has zero probability");
  for (double& x : out) x /= mass;
  return JointDistribution(std::move(out_sizes), std::move(out));
}

double mi_given_value(const JointDistribution& d, const MarginalSpec& left,
                      const MarginalSpec& right, int axis, int value) {
  for (int a : left)
    if (a == axis) throw Error("mi_given_value: conditioning axis inside left set");
  for (int a : right)
    if (a == axis) throw Error("mi_given_value: conditioning axis inside right set");
  return mutual_information(conditioned(d, {{axis, value}}), left, right);
}

CsiszarPhi CsiszarPhi::checked(std::string name, std::function<double(double)> fn) {
  const std::vector<double> grid = log_grid(1e-6, 1e6, 61);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double mid = 0.5 * (grid[i] + grid[j]);
      const double lhs = fn(mid);
      const double rhs = 0.5 * (fn(grid[i]) + fn(grid[j]));
      if (!(lhs <= rhs + kConvexityTol)) {
        std::ostringstream os;
        os << "phi '" << name << "' fails midpoint convexity at x=" << grid[i]
           << ", y=" << grid[j];
        throw Error(os.str());
      }
    }
  return CsiszarPhi{std::move(name), std::move(fn)};
}

CsiszarPhi CsiszarPhi::shannon() {
  return checked("neg_log2", [](double x) { return -std::log2(x); });
}

double csiszar_measure(const JointDistribution& d, const MarginalSpec& left,
                       const MarginalSpec& right, const CsiszarPhi& phi) {
  require_disjoint(left, right, "csiszar_measure");
  const JointDistribution g = marginal(d, set_union(left, right));
  const JointDistribution ml = marginal(d, left);
  const JointDistribution mr = marginal(d, right);

  // g's axes are sorted(left U right); record where each lands in ml/mr.
  MarginalSpec ls = left, rs = right;
  std::sort(ls.begin(), ls.end());
  std::sort(rs.begin(), rs.end());
  MarginalSpec all = set_union(ls, rs);
  std::sort(all.begin(), all.end());

  std::vector<std::size_t> lstride(all.size(), 0), rstride(all.size(), 0);
  std::size_t sl = 1, sr = 1;
  for (int a = static_cast<int>(all.size()) - 1; a >= 0; --a) {
    if (std::binary_search(ls.begin(), ls.end(), all[a])) {
      lstride[a] = sl;
      sl *= static_cast<std::size_t>(g.axis_sizes()[a]);
    } else {
      rstride[a] = sr;
      sr *= static_cast<std::size_t>(g.axis_sizes()[a]);
    }
  }

  double acc = 0.0;
  std::vector<int> idx(g.num_axes(), 0);
  std::size_t f = 0;
  do {
    const double gv = g.table()[f];
    ++f;
    if (gv <= 0.0) continue;
    std::size_t li = 0, ri = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      li += lstride[a] * static_cast<std::size_t>(idx[a]);
      ri += rstride[a] * static_cast<std::size_t>(idx[a]);
    }
    const double fv = ml.table()[li] * mr.table()[ri];
    const double term = phi.fn(fv / gv);
    if (!std::isfinite(term)) {
      std::ostringstream os;
      os << "phi '" << phi.name << "' evaluation failed at ratio " << fv / gv;
      throw Error(os.str());
    }
    acc += gv * term;
  } while (advance(idx, g.axis_sizes()));
  return acc;
}

PhiConditionResult check_phi_condition(const CsiszarPhi& phi,
                                       const std::vector<double>& grid) {
  if (grid.empty()) throw Error("check_phi_condition: empty grid");
  PhiConditionResult r;
  r.worst = std::numeric_limits<double>::infinity();
  for (double x : grid)
    for (double y : grid) {
      const double v = phi.fn(x) + phi.fn(y) - phi.fn(x * y);
      if (v < r.worst) {
        r.worst = v;
        r.worst_x = x;
        r.worst_y = y;
      }
    }
  r.passed = r.worst >= -kPhiConditionTol;
  return r;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) throw Error("log_grid: bad range");
  std::vector<double> g(points);
  const double step = (std::log(hi) - std::log(lo)) / (points - 1);
  for (int i = 0; i < points; ++i) g[i] = std::exp(std::log(lo) + i * step);
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace sepmeas
