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

#include "sepmeas/generators.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace sepmeas {

namespace {

constexpr double kEigenFloor = 1e-12;
constexpr int kMaxPovmRetries = 10;

CMatrix gaussian_matrix(int rows, int cols, Rng& rng) {
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.cgaussian();
  return g;
}

CMatrix ket_projector(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

}  // namespace

double Rng::uniform() {
  // 53 high bits of the 64-bit output.
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::cgaussian() { return {gaussian(), gaussian()}; }

DensityMatrix random_density(int dim, int rank, Rng& rng) {
  if (dim < 1 || rank < 1 || rank > dim)
    throw Error("random_density: need 1 <= rank <= dim");
  const CMatrix g = gaussian_matrix(dim, rank, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(hermitize(rho));
}

Povm random_povm(int dim, int n_outcomes, Rng& rng) {
  if (dim < 1 || n_outcomes < 1)
    throw Error("random_povm: dimension and outcome count must be >= 1");

  for (int attempt = 0; attempt < kMaxPovmRetries; ++attempt) {
    std::vector<CMatrix> gs;
    gs.reserve(n_outcomes);
    CMatrix s = CMatrix::Zero(dim, dim);
    for (int b = 0; b < n_outcomes; ++b) {
      const CMatrix a = gaussian_matrix(dim, dim, rng);
      gs.push_back(a * a.adjoint());
      s += gs.back();
    }

    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitize(s));
    if (solver.info() != Eigen::Success) continue;
    const auto& ev = solver.eigenvalues();
    if (ev.minCoeff() <= kEigenFloor * std::max(1.0, ev.maxCoeff())) continue;

    Eigen::VectorXd inv_sqrt(dim);
    for (int i = 0; i < dim; ++i)
      inv_sqrt(i) = 1.0 / std::sqrt(std::max(ev(i), kEigenFloor));
    const CMatrix root = solver.eigenvectors() * inv_sqrt.asDiagonal() *
                         solver.eigenvectors().adjoint();

    std::vector<PovmElement> elements;
    elements.reserve(n_outcomes);
    for (int b = 0; b < n_outcomes; ++b)
      elements.push_back({OutcomeLabel{{}, b}, hermitize(root * gs[b] * root)});
    return Povm(dim, std::move(elements));
  }
  throw Error("random_povm: degenerate normalization after 10 retries");
}

Ensemble bb84_ensemble() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd zero(2), one(2), plus(2), minus(2);
  zero << 1, 0;
  one << 0, 1;
  plus << s, s;
  minus << s, -s;

  std::vector<DensityMatrix> states;
  for (const auto& v : {zero, one, plus, minus})
    states.emplace_back(ket_projector(v));
  return Ensemble(std::move(states), {0.25, 0.25, 0.25, 0.25});
}

Povm bell_povm() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd phi_p(4), phi_m(4), psi_p(4), psi_m(4);
  phi_p << s, 0, 0, s;
  phi_m << s, 0, 0, -s;
  psi_p << 0, s, s, 0;
  psi_m << 0, s, -s, 0;

  std::vector<PovmElement> elements;
  int b = 0;
  for (const auto& v : {phi_p, phi_m, psi_p, psi_m})
    elements.push_back({OutcomeLabel{{}, b++}, ket_projector(v)});
  return Povm(4, std::move(elements));
}

Scenario random_scenario(const GenConfig& cfg) {
  if (cfg.dims.size() != cfg.states_per_subsystem.size())
    throw Error("random_scenario: dims and states_per_subsystem differ in length");
  if (cfg.povm_outcomes < 1) throw Error("random_scenario: povm_outcomes must be >= 1");
  for (int d : cfg.dims)
    if (d < 2) throw Error("random_scenario: subsystem dimensions must be >= 2");
  for (int n : cfg.states_per_subsystem)
    if (n < 1) throw Error("random_scenario: state counts must be >= 1");

  Rng rng(cfg.seed);
  std::vector<Ensemble> subsystems;
  long long joint_dim = 1;
  for (std::size_t k = 0; k < cfg.dims.size(); ++k) {
    const int dim = cfg.dims[k];
    const int n_states = cfg.states_per_subsystem[k];
    const int rank = cfg.state_rank == StateRank::pure ? 1 : dim;

    std::vector<DensityMatrix> states;
    states.reserve(n_states);
    for (int a = 0; a < n_states; ++a) states.push_back(random_density(dim, rank, rng));

    std::vector<double> priors(n_states, 1.0 / n_states);
    if (cfg.prior_mode == PriorMode::random) {
      // Flat Dirichlet: normalized unit exponentials.
      double sum = 0.0;
      for (double& p : priors) {
        p = -std::log(1.0 - rng.uniform());
        sum += p;
      }
      for (double& p : priors) p /= sum;
    }
    subsystems.emplace_back(std::move(states), std::move(priors));
    joint_dim *= dim;
  }

  Povm joint = random_povm(static_cast<int>(joint_dim), cfg.povm_outcomes, rng);
  return Scenario(std::move(subsystems), std::move(joint));
}

}  // namespace sepmeas
