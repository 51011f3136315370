// Copyright 2026 The qpde Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpde/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

namespace qpde {
namespace {

TEST(Fidelity, OverlapSquared) {
  const auto a = QuantumState::basis(2, 1);
  const auto b = apply_gate(QuantumState(2), Gate::H(1));
  EXPECT_NEAR(fidelity(a, b), 0.5, 1e-15);
  const Amplitudes u{2.0, 0.0}, v{1.0, 1.0};
  EXPECT_NEAR(fidelity(u, v), 0.5, 1e-15);
  EXPECT_NEAR(fidelity(DensityState::from_pure(b), a), 0.5, 1e-15);
}

TEST(Aggregate, MedianAndPopulationStd) {
  const std::vector<double> v{4, 1, 3, 2};
  const auto s = aggregate(v);
  EXPECT_DOUBLE_EQ(s.median, 2.5);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.std, std::sqrt(1.25), 1e-15);
  EXPECT_EQ(s.count, 4u);
  EXPECT_THROW(aggregate(std::vector<double>{}), std::invalid_argument);
}

TEST(RankCorrelation, MonotoneAndTies) {
  const std::vector<double> x{1, 2, 3, 4, 5}, y{10, 20, 25, 100, 1000}, z{5, 4, 3, 2, 1};
  EXPECT_NEAR(rank_correlation(x, y), 1.0, 1e-15);
  EXPECT_NEAR(rank_correlation(x, z), -1.0, 1e-15);
  const std::vector<double> t{1, 1, 2, 2, 3};
  EXPECT_GT(rank_correlation(x, t), 0.9);
}

TEST(Infidelity, DenseGroundStateAttainsTheoreticalFloor) {
  ReferenceCache cache;
  for (auto problem : {Problem::harmonic_oscillator(), Problem::transmon(), Problem::flux_qubit()}) {
    for (int n = 2; n <= 5; ++n) {
      const auto r = cache.get(problem, n);
      const auto s = QuantumState::from_amplitudes(Amplitudes(r->ground.begin(), r->ground.end()));
      EXPECT_NEAR(continuous_infidelity(s, problem, cache), theoretical_infidelity(problem, n, cache), 1e-12);
      EXPECT_NEAR(epsilon(r->e0, *r), 0.0, 1e-15);
    }
  }
}

TEST(Infidelity, FloorsOfTheSuperconductingCircuits) {
  ReferenceCache cache;
  EXPECT_NEAR(theoretical_infidelity(Problem::transmon(), 3, cache), 1.28e-3, 0.03 * 1.28e-3);
  EXPECT_NEAR(theoretical_infidelity(Problem::flux_qubit(), 4, cache), 4.35e-5, 0.03 * 4.35e-5);
  // floors decrease with n
  for (int n = 2; n < 4; ++n) {
    EXPECT_GT(theoretical_infidelity(Problem::transmon(), n, cache),
              theoretical_infidelity(Problem::transmon(), n + 1, cache));
  }
}

TEST(Infidelity, PureAndDensityVersionsAgree) {
  ReferenceCache cache;
  std::mt19937_64 rng(6);
  const auto problem = Problem::flux_qubit();
  const auto s = QuantumState::from_amplitudes(oracle::random_real_state(8, rng));
  EXPECT_NEAR(continuous_infidelity(DensityState::from_pure(s), problem, cache),
              continuous_infidelity(s, problem, cache), 1e-12);
}

TEST(Epsilon, NormalizedByGap) {
  ReferenceSolution r{Grid::symmetric(1.0, 1), 1.0, 3.0, {1.0, 0.0}};
  EXPECT_DOUBLE_EQ(epsilon(1.5, r), 0.25);
  EXPECT_DOUBLE_EQ(epsilon(0.5, r), 0.25);
}

TEST(MeritReport, CollectsAllFigures) {
  ReferenceCache cache;
  const auto problem = Problem::harmonic_oscillator();
  const auto r = cache.get(problem, 3);
  const auto s = QuantumState::from_amplitudes(Amplitudes(r->ground.begin(), r->ground.end()));
  const auto m = merit_report(s, r->e0 + 0.01, problem, cache);
  EXPECT_NEAR(m.epsilon, 0.01 / (r->e1 - r->e0), 1e-12);
  EXPECT_DOUBLE_EQ(m.energy_tn, r->e0);
  EXPECT_GE(m.infidelity_inf, 0.0);
  EXPECT_LT(m.infidelity_n, 1e-3);
}

}  // namespace
}  // namespace qpde
