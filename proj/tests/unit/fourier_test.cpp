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

#include "qpde/fourier.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"

namespace qpde {
namespace {

TEST(Grid, SymmetricPointsMirror) {
  const Grid g = Grid::symmetric(4.0, 3);
  EXPECT_DOUBLE_EQ(g.dx(), 0.5);
  EXPECT_DOUBLE_EQ(g.point(0), -1.75);
  for (std::size_t s = 0; s < g.size(); ++s) EXPECT_NEAR(g.point(s), -g.point(g.size() - 1 - s), 1e-15);
  EXPECT_THROW(Grid(1.0, 1.0, 2, Centering::kLeft), std::invalid_argument);
}

TEST(Grid, RefinedKeepsFirstPointAndPeriod) {
  const Grid g = Grid::symmetric(4.0, 3);
  const Grid r = g.refined(2);
  EXPECT_DOUBLE_EQ(r.point(0), g.point(0));
  EXPECT_DOUBLE_EQ(r.length(), g.length());
  EXPECT_DOUBLE_EQ(r.point(4), g.point(1));
}

TEST(MomentumGrid, UpperHalfIsNegative) {
  const MomentumGrid p(Grid(0.0, 2 * std::numbers::pi, 3, Centering::kLeft));
  const std::vector<double> expected{0, 1, 2, 3, -4, -3, -2, -1};
  EXPECT_DOUBLE_EQ(p.dp(), 1.0);
  for (std::size_t s = 0; s < 8; ++s) EXPECT_DOUBLE_EQ(p.momentum(s), expected[s]);
}

TEST(MinQubits, MatchesNyquistCount) {
  EXPECT_EQ(min_qubits(2 * std::numbers::pi, 8.0), 3);
  EXPECT_EQ(min_qubits(2 * std::numbers::pi, 8.01), 4);
  EXPECT_EQ(min_qubits(1.0, 1.0), 0);
  EXPECT_THROW(min_qubits(-1.0, 1.0), std::invalid_argument);
}

TEST(Encode, NormalizesSamples) {
  const Grid g(0.0, 1.0, 2, Centering::kLeft);
  const auto s = encode_function(RealFunction([](double x) { return 1.0 + x; }), g);
  const double norm = std::sqrt(1 + 1.25 * 1.25 + 1.5 * 1.5 + 1.75 * 1.75);
  EXPECT_NEAR(s[1].real(), 1.25 / norm, 1e-15);
  EXPECT_THROW(encode_function(RealFunction([](double) { return 0.0; }), g), std::invalid_argument);
}

TEST(Encode, TwoDimensionalProductRegister) {
  const std::vector<Grid> grids{Grid(0, 2, 1, Centering::kLeft), Grid(0, 4, 2, Centering::kLeft)};
  const auto s = encode_function([](std::span<const double> x) { return Complex(1 + x[0] * 10 + x[1]); }, grids);
  // index 0b1_10 is x0 = 1, x1 = 2
  EXPECT_NEAR(s[6].real() / s[0].real(), 13.0, 1e-12);
}

TEST(Interpolation, CircuitMatchesClassicalFft) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 5; ++n) {
    for (int m = 0; m <= 7; ++m) {
      const auto v = oracle::random_real_state(std::size_t{1} << n, rng);
      const auto in = QuantumState::from_amplitudes(v);
      const auto out = run_circuit(interpolate_position_circuit(n, m), pad_with_ancillas(in, m));
      const auto ref = interpolate_classical(v, m);
      double err = 0;
      for (std::size_t i = 0; i < ref.size(); ++i) err = std::max(err, std::abs(out[i] - ref[i]));
      EXPECT_LT(err, 1e-10) << "n=" << n << " m=" << m;
    }
  }
}

TEST(Interpolation, ReproducesSamplesAndOracleInterpolant) {
  std::mt19937_64 rng(5);
  const auto v = oracle::random_real_state(8, rng);
  const auto fine = trig_interpolate(v, 2);
  for (std::size_t s = 0; s < 8; ++s) EXPECT_NEAR(std::abs(fine[4 * s] - v[s]), 0.0, 1e-13);
  for (std::size_t t = 0; t < fine.size(); ++t) {
    EXPECT_NEAR(std::abs(fine[t] - oracle::interpolant(v, t / 4.0)), 0.0, 1e-12);
  }
}

TEST(Interpolation, AdjointPreservesOverlap) {
  std::mt19937_64 rng(9);
  const auto f = oracle::random_real_state(8, rng);
  const auto g = oracle::random_real_state(64, rng);
  const auto af = interpolate_classical(f, 3);
  const auto ag = interpolation_adjoint(g, 3);
  Complex lhs{}, rhs{};
  for (std::size_t i = 0; i < g.size(); ++i) lhs += std::conj(g[i]) * af[i];
  for (std::size_t i = 0; i < f.size(); ++i) rhs += std::conj(ag[i]) * f[i];
  EXPECT_NEAR(std::abs(lhs), std::abs(rhs), 1e-13);
}

TEST(Interpolation, GateCountIsQuadratic) {
  for (int total = 2; total <= 12; ++total) {
    const int n = total / 2, m = total - n;
    const auto c = interpolate_position_circuit(n, m);
    const std::size_t bound = static_cast<std::size_t>(total * total + n * n + 2 * total);
    EXPECT_LE(c.size(), bound);
    EXPECT_GE(c.size(), static_cast<std::size_t>(total * (total - 1) / 2));
  }
}

TEST(Reconstruct, ExactOnBandLimitedFunction) {
  // cos(3x) sampled on 8 points lies inside the band.
  const Grid g(0.0, 2 * std::numbers::pi, 3, Centering::kLeft);
  const auto s = encode_function(RealFunction([](double x) { return 2 + std::cos(3 * x); }), g);
  const double scale = s[0].real() / 3.0;
  for (double x : {0.1, 1.3, 2.9, 5.5}) {
    EXPECT_NEAR(reconstruct_continuous(s, g, x).real(), scale * (2 + std::cos(3 * x)), 1e-12);
  }
}

}  // namespace
}  // namespace qpde
