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

#include "qpde/optimize.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qpde {
namespace {

// First-order trigonometric in every coordinate, so the shift rule is exact.
double trig_energy(std::span<const double> t) {
  double e = 0;
  for (std::size_t i = 0; i < t.size(); ++i) e += std::cos(t[i] - 0.3 * static_cast<double>(i));
  if (t.size() >= 2) e += 0.5 * std::sin(t[0]) * std::sin(t[1]);
  return e;
}

double trig_min(std::size_t dim) {
  // crude global search on the 2-D coupled part, separable elsewhere
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 720; ++a) {
    for (int b = 0; b < 720; ++b) {
      const double t0 = a * std::numbers::pi / 360, t1 = b * std::numbers::pi / 360;
      const double v = std::cos(t0) + std::cos(t1 - 0.3) + 0.5 * std::sin(t0) * std::sin(t1);
      best = std::min(best, v);
    }
  }
  return best - static_cast<double>(dim - 2);
}

Objective exact_objective() {
  Objective o;
  o.estimate = [](std::span<const double> t, std::uint64_t) { return trig_energy(t); };
  o.exact = trig_energy;
  return o;
}

TEST(Gradient, ParameterShiftEqualsFiniteDifference) {
  const std::vector<double> theta{0.3, -1.2, 2.0, 0.7};
  const auto ps = parameter_shift_gradient(exact_objective().estimate, theta, 0);
  const auto fd = finite_difference_gradient(trig_energy, theta);
  ASSERT_EQ(ps.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(ps[i], fd[i], 1e-8);
  // analytic d/dt0 = -sin(t0) + 0.5 cos(t0) sin(t1)
  EXPECT_NEAR(ps[0], -std::sin(0.3) + 0.5 * std::cos(0.3) * std::sin(-1.2), 1e-12);
}

TEST(Optimizers, AllReachTheMinimumWithExactEnergies) {
  const double target = trig_min(3);
  for (auto method : {OptimizerMethod::kAdam, OptimizerMethod::kSpsa, OptimizerMethod::kNelderMead}) {
    OptimizerConfig cfg;
    cfg.method = method;
    cfg.seed = 4;
    if (method == OptimizerMethod::kSpsa) cfg.max_iterations = 3000;
    const auto tr = minimize(exact_objective(), {0.05, -0.02, 0.08}, cfg);
    EXPECT_NEAR(tr.exact_opt, target, 2e-3) << to_string(method);
    EXPECT_EQ(tr.points.front().iteration, 0);
    EXPECT_GT(tr.evaluations, 0);
  }
}

TEST(Optimizers, DeterministicForFixedSeed) {
  Objective noisy;
  noisy.estimate = [](std::span<const double> t, std::uint64_t seed) {
    return trig_energy(t) + 1e-3 * std::sin(static_cast<double>(seed % 1000));
  };
  OptimizerConfig cfg;
  cfg.method = OptimizerMethod::kSpsa;
  cfg.seed = 99;
  cfg.max_iterations = 50;
  const auto a = minimize(noisy, {0.1, 0.2}, cfg);
  const auto b = minimize(noisy, {0.1, 0.2}, cfg);
  EXPECT_EQ(a.theta_opt, b.theta_opt);
  cfg.seed = 100;
  EXPECT_NE(minimize(noisy, {0.1, 0.2}, cfg).theta_opt, a.theta_opt);
}

TEST(Optimizers, NonFiniteEnergyThrows) {
  Objective bad;
  bad.estimate = [](std::span<const double>, std::uint64_t) { return std::nan(""); };
  for (auto method : {OptimizerMethod::kAdam, OptimizerMethod::kSpsa, OptimizerMethod::kNelderMead}) {
    OptimizerConfig cfg;
    cfg.method = method;
    EXPECT_THROW(minimize(bad, {0.1}, cfg), std::runtime_error);
  }
}

TEST(OptimizerConfig, DefaultsAndValidation) {
  OptimizerConfig cfg;
  EXPECT_EQ(cfg.effective_iterations(), 300);
  cfg.method = OptimizerMethod::kSpsa;
  EXPECT_EQ(cfg.effective_iterations(), 500);
  cfg.learning_rate = -1;
  cfg.method = OptimizerMethod::kAdam;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_EQ(parse_optimizer_method("nelder_mead"), OptimizerMethod::kNelderMead);
  EXPECT_THROW(parse_optimizer_method("lbfgs"), std::invalid_argument);
}

TEST(InitialParameters, SmallUniformAndSeeded) {
  const auto a = initial_parameters(200, 5);
  for (double v : a) {
    EXPECT_GE(v, -0.1);
    EXPECT_LE(v, 0.1);
  }
  EXPECT_EQ(a, initial_parameters(200, 5));
  EXPECT_NE(a, initial_parameters(200, 6));
}

TEST(Trajectory, CsvHasOneRowPerPoint) {
  OptimizerConfig cfg;
  cfg.max_iterations = 5;
  const auto tr = minimize(exact_objective(), {0.1, 0.1}, cfg);
  EXPECT_EQ(tr.points.size(), 6u);
  std::ostringstream out;
  write_trajectory_csv(out, tr);
  const auto text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
}

}  // namespace
}  // namespace qpde
