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

#include <cmath>

#include "bb84_oracle.hpp"
#include "doctest.h"
#include "sepmeas/generators.hpp"

using namespace sepmeas;

namespace {

Scenario bb84_bell_scenario() {
  const Ensemble bb84 = bb84_ensemble();
  return Scenario({bb84, bb84}, bell_povm());
}

JointDistribution random_distribution(const std::vector<int>& sizes, Rng& rng) {
  std::size_t n = 1;
  for (int s : sizes) n *= static_cast<std::size_t>(s);
  std::vector<double> table(n);
  double sum = 0.0;
  for (double& x : table) {
    x = -std::log(1.0 - rng.uniform());
    sum += x;
  }
  for (double& x : table) x /= sum;
  return JointDistribution(sizes, std::move(table));
}

}  // namespace

TEST_CASE("joint distribution of a single-element POVM is the prior product") {
  Rng rng(21);
  const Ensemble e1({random_density(2, 2, rng), random_density(2, 2, rng)}, {0.3, 0.7});
  const Ensemble e2({random_density(2, 1, rng), random_density(2, 2, rng)}, {0.6, 0.4});
  const Povm joint(4, {{OutcomeLabel{{}, 0}, CMatrix::Identity(4, 4)}});
  const JointDistribution d = joint_distribution(Scenario({e1, e2}, joint));

  REQUIRE(d.axis_sizes() == std::vector<int>{2, 2, 1});
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      CHECK(d.at({a1, a2, 0}) ==
            doctest::Approx(e1.priors()[a1] * e2.priors()[a2]).epsilon(1e-12));
}

TEST_CASE("single-state ensembles reduce to plain outcome probabilities") {
  Rng rng(22);
  const DensityMatrix s1 = random_density(2, 2, rng);
  const DensityMatrix s2 = random_density(2, 2, rng);
  const Povm joint = random_povm(4, 3, rng);
  const Scenario s({Ensemble({s1}, {1.0}), Ensemble({s2}, {1.0})}, joint);
  const JointDistribution d = joint_distribution(s);

  const CMatrix rho = tensor(s1.matrix(), s2.matrix());
  for (int b = 0; b < 3; ++b)
    CHECK(d.at({0, 0, b}) ==
          doctest::Approx((rho * joint[b].matrix).trace().real()).epsilon(1e-12));
}

TEST_CASE("BB84/Bell joint table matches the brute-force oracle") {
  const JointDistribution d = joint_distribution(bb84_bell_scenario());
  const auto oracle = bb84_oracle::compute();
  REQUIRE(d.size() == oracle.joint.size());
  for (std::size_t i = 0; i < oracle.joint.size(); ++i)
    CHECK(std::abs(d.table()[i] - oracle.joint[i]) < 1e-12);
}

TEST_CASE("entropy basics") {
  const JointDistribution uniform({4}, {0.25, 0.25, 0.25, 0.25});
  CHECK(entropy(uniform, {0}) == doctest::Approx(2.0).epsilon(1e-12));

  const JointDistribution deterministic({4}, {0.0, 1.0, 0.0, 0.0});
  CHECK(entropy(deterministic, {0}) == 0.0);
}

TEST_CASE("entropy of the Bell outcome marginal matches the oracle") {
  const JointDistribution d = joint_distribution(bb84_bell_scenario());
  const auto oracle = bb84_oracle::compute();
  CHECK(entropy(d, {2}) == doctest::Approx(oracle.H_B).epsilon(1e-12));
  CHECK(entropy(d, {0, 1, 2}) == doctest::Approx(oracle.H_all).epsilon(1e-12));
  // Frozen analytic values for this scenario.
  CHECK(entropy(d, {2}) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(entropy(d, {0, 1, 2}) == doctest::Approx(5.5).epsilon(1e-10));
}

TEST_CASE("mutual information basics") {
  // Product distribution: independent fair bits.
  const JointDistribution product({2, 2}, {0.25, 0.25, 0.25, 0.25});
  CHECK(std::abs(mutual_information(product, {0}, {1})) < 1e-12);

  // Perfectly correlated uniform pair.
  const JointDistribution correlated({2, 2}, {0.5, 0.0, 0.0, 0.5});
  CHECK(mutual_information(correlated, {0}, {1}) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(mutual_information(product, {0}, {0}), Error);
}

TEST_CASE("joint mutual information of the BB84/Bell scenario") {
  const JointDistribution d = joint_distribution(bb84_bell_scenario());
  const auto oracle = bb84_oracle::compute();
  CHECK(mutual_information(d, {0, 1}, {2}) ==
        doctest::Approx(oracle.I_joint).epsilon(1e-12));
  CHECK(mutual_information(d, {0, 1}, {2}) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("conditional mutual information") {
  const JointDistribution product({2, 2, 2},
                                  {0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125});
  CHECK(std::abs(conditional_mutual_information(product, {0}, {2}, {1})) < 1e-12);

  // B = A1 deterministically, A2 an independent fair coin.
  std::vector<double> t(8, 0.0);
  const double pa1[2] = {0.25, 0.75};
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2) t[(a1 * 2 + a2) * 2 + a1] = pa1[a1] * 0.5;
  const JointDistribution channel({2, 2, 2}, std::move(t));
  const double h_a1 = entropy(channel, {0});
  CHECK(conditional_mutual_information(channel, {0}, {2}, {1}) ==
        doctest::Approx(h_a1).epsilon(1e-12));

  const JointDistribution d = joint_distribution(bb84_bell_scenario());
  CHECK(conditional_mutual_information(d, {0}, {2}, {1}) ==
        doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("mi_given_value") {
  const JointDistribution d = joint_distribution(bb84_bell_scenario());
  const auto oracle = bb84_oracle::compute();
  for (int a2 = 0; a2 < 4; ++a2)
    CHECK(mi_given_value(d, {0}, {2}, 1, a2) ==
          doctest::Approx(oracle.I1_given_a2[a2]).epsilon(1e-12));

  // Conditioning on an axis independent of left and right changes nothing.
  const JointDistribution product({2, 2, 2},
                                  {0.15, 0.15, 0.1, 0.1, 0.15, 0.15, 0.1, 0.1});
  CHECK(mi_given_value(product, {1}, {2}, 0, 0) ==
        doctest::Approx(mutual_information(product, {1}, {2})).epsilon(1e-12));

  // Deterministic left given right inside the slice.
  const JointDistribution det({2, 2, 2}, {0.25, 0.0, 0.0, 0.25, 0.25, 0.125, 0.125, 0.0});
  const JointDistribution slice = conditioned(det, {{0, 0}});
  CHECK(mi_given_value(det, {1}, {2}, 0, 0) ==
        doctest::Approx(entropy(slice, {1})).epsilon(1e-12));

  // A zero-probability slice signals the caller to skip that value.
  const JointDistribution gap({2, 2, 2}, {0.25, 0.25, 0.25, 0.25, 0.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(mi_given_value(gap, {1}, {2}, 0, 1), ZeroProbabilitySlice);
  CHECK_THROWS_AS(conditioned(gap, {{0, 1}}), ZeroProbabilitySlice);
}

TEST_CASE("csiszar measure with -log2 reproduces Shannon mutual information") {
  const CsiszarPhi phi = CsiszarPhi::shannon();
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int nl = 2 + static_cast<int>(rng.uniform() * 3);
    const int nr = 2 + static_cast<int>(rng.uniform() * 3);
    const JointDistribution d = random_distribution({nl, nr}, rng);
    CHECK(std::abs(csiszar_measure(d, {0}, {1}, phi) -
                   mutual_information(d, {0}, {1})) < 1e-12);
  }
}

TEST_CASE("csiszar measure vanishes on product distributions when phi(1) = 0") {
  std::vector<double> t(6);
  const double px[2] = {0.4, 0.6};
  const double py[3] = {0.2, 0.3, 0.5};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) t[i * 3 + j] = px[i] * py[j];
  const JointDistribution indep({2, 3}, std::move(t));

  CHECK(std::abs(csiszar_measure(indep, {0}, {1}, CsiszarPhi::shannon())) < 1e-12);
  const CsiszarPhi affine = CsiszarPhi::checked("one_minus_x", [](double x) { return 1.0 - x; });
  CHECK(std::abs(csiszar_measure(indep, {0}, {1}, affine)) < 1e-12);
}

TEST_CASE("csiszar measure on a correlated pair gives one bit") {
  const JointDistribution correlated({2, 2}, {0.5, 0.0, 0.0, 0.5});
  CHECK(csiszar_measure(correlated, {0}, {1}, CsiszarPhi::shannon()) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("phi condition check") {
  const std::vector<double> grid = log_grid(1e-3, 1e3, 25);

  SUBCASE("-log2 satisfies the condition with equality") {
    const auto r = check_phi_condition(CsiszarPhi::shannon(), grid);
    CHECK(r.passed);
    CHECK(std::abs(r.worst) < 1e-12);
  }

  SUBCASE("1 - x violates the condition for x, y > 1") {
    const CsiszarPhi affine =
        CsiszarPhi::checked("one_minus_x", [](double x) { return 1.0 - x; });
    const auto r = check_phi_condition(affine, grid);
    CHECK_FALSE(r.passed);
    CHECK(r.worst < 0.0);
    // (1-x)(1-y) is negative exactly when one factor exceeds 1.
    CHECK((r.worst_x > 1.0) != (r.worst_y > 1.0));

    // Worst location agrees with an exhaustive scan done here.
    double worst = 1e300, wx = 0, wy = 0;
    for (double x : grid)
      for (double y : grid) {
        const double v = (1.0 - x) + (1.0 - y) - (1.0 - x * y);
        if (v < worst) {
          worst = v;
          wx = x;
          wy = y;
        }
      }
    CHECK(r.worst == doctest::Approx(worst).epsilon(1e-12));
    CHECK(r.worst_x == wx);
    CHECK(r.worst_y == wy);
  }

  SUBCASE("empty grid is rejected") {
    CHECK_THROWS_AS(check_phi_condition(CsiszarPhi::shannon(), {}), Error);
  }
}

TEST_CASE("convexity screening rejects concave functions") {
  CHECK_THROWS_AS(CsiszarPhi::checked("sqrt", [](double x) { return std::sqrt(x); }),
                  Error);
  CHECK_NOTHROW(CsiszarPhi::checked("square", [](double x) { return x * x; }));
}

TEST_CASE("information quantities are non-negative on random distributions") {
  Rng rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const int na = 2 + static_cast<int>(rng.uniform() * 3);
    const int nb = 2 + static_cast<int>(rng.uniform() * 3);
    const int nc = 2 + static_cast<int>(rng.uniform() * 2);
    const JointDistribution d = random_distribution({na, nb, nc}, rng);
    for (const MarginalSpec& axes :
         {MarginalSpec{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 1, 2}})
      CHECK(entropy(d, axes) >= 0.0);
    CHECK(mutual_information(d, {0}, {2}) >= -1e-12);
    CHECK(mutual_information(d, {0, 1}, {2}) >= -1e-12);
    CHECK(conditional_mutual_information(d, {0}, {2}, {1}) >= -1e-12);
  }
}

TEST_CASE("csiszar chain inequality holds for a shifted log weight") {
  // phi(x) = 1 - log2(x) satisfies phi(x)+phi(y) >= phi(xy) (with slack 1)
  // and is convex, so the footnote inequality applies beyond -log2 itself.
  const CsiszarPhi phi =
      CsiszarPhi::checked("one_minus_log2", [](double x) { return 1.0 - std::log2(x); });
  CHECK(check_phi_condition(phi, log_grid(1e-6, 1e6, 25)).passed);

  for (std::uint64_t seed = 400; seed < 405; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    const Scenario s = random_scenario(cfg);
    const JointDistribution d = joint_distribution(s);

    double cond = 0.0;
    const auto& priors2 = s.subsystems()[1].priors();
    for (int a2 = 0; a2 < s.subsystems()[1].size(); ++a2) {
      if (priors2[a2] <= 0.0) continue;
      cond += priors2[a2] * csiszar_measure(conditioned(d, {{1, a2}}), {0}, {2}, phi);
    }
    const double chain =
        cond + csiszar_measure(d, {1}, {2}, phi) - csiszar_measure(d, {0, 1}, {2}, phi);
    CHECK(chain >= -1e-9);
  }
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(JointDistribution({2}, {0.5, 0.4}), Error);          // sums to 0.9
  CHECK_THROWS_AS(JointDistribution({2}, {1.1, -0.1}), Error);         // entry < -tol
  CHECK_THROWS_AS(JointDistribution({2}, {0.5, 0.5, 0.1}), Error);     // size mismatch
  CHECK_THROWS_AS(JointDistribution({500, 500, 500}, {}), Error);      // cap

  // Tiny negative round-off is clipped and renormalized.
  const JointDistribution d({2}, {1.0 + 1e-12, -1e-12});
  CHECK(d.table()[1] == 0.0);
  CHECK(d.table()[0] == 1.0);
}
