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

#include "qpde/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

namespace qpde {
namespace {

const std::vector<int> kSmall{2, 3, 4, 5, 6};

TEST(FitLine, RecoversExactLine) {
  const std::vector<double> x{1, 2, 3, 4}, y{1.5, 3.5, 5.5, 7.5};
  const auto f = fit_line(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, -0.5, 1e-14);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-14);
}

TEST(Spectral, PoissonKernelDecaysExponentially) {
  // Aliasing error of r^|k| coefficients falls like r^(N/2).
  const double r = 0.6;
  const auto rep = spectral_error_report(poisson_kernel(r), kSmall);
  EXPECT_GT(rep.exponential_fit.r_squared, 0.99);
  EXPECT_NEAR(rep.exponential_fit.slope, std::log(r) / 2, 0.05);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    EXPECT_LT(rep.rows[i].interpolation_l2, rep.rows[i - 1].interpolation_l2);
  }
}

TEST(Spectral, ExpCosConvergesToMachinePrecision) {
  const auto rep = spectral_error_report(exp_cos(), std::vector<int>{2, 3, 4, 5});
  EXPECT_LT(rep.rows.back().interpolation_max, 1e-13);
}

TEST(Spectral, BernoulliAlgebraicOrders) {
  const std::vector<int> ns{4, 5, 6, 7, 8, 9};
  for (int m = 1; m <= 3; ++m) {
    const auto rep = spectral_error_report(bernoulli_periodic(m), ns);
    EXPECT_NEAR(-rep.algebraic_fit.slope, m, 0.5) << "m=" << m;
    EXPECT_NEAR(-rep.derivative_fit.slope, m - 1, 0.5) << "m=" << m;
  }
  EXPECT_THROW(bernoulli_periodic(4), std::invalid_argument);
}

TEST(Spectral, BernoulliDerivativeOracle) {
  // B2(u) = u^2 - u + 1/6 with u = x / 2 pi.
  const auto b = bernoulli_periodic(1);
  const double x = 1.0, u = x / (2 * std::numbers::pi);
  EXPECT_NEAR(b.f(x), u * u - u + 1.0 / 6, 1e-15);
  const double h = 1e-6;
  EXPECT_NEAR(b.derivative(x), (b.f(x + h) - b.f(x - h)) / (2 * h), 1e-8);
}

TEST(Spectral, GibbsOvershootOfTruncatedSeries) {
  // (1/pi) Si(pi) - 1/2 = 0.0894898...
  const auto rep = spectral_error_report(unit_step(), std::vector<int>{6, 8, 10}, 16);
  for (const auto& row : rep.rows) EXPECT_NEAR(row.truncation_overshoot, 0.0895, 0.005);
}

TEST(Spectral, RejectsBadRanges) {
  EXPECT_THROW(spectral_error_report(exp_cos(), std::vector<int>{}), std::invalid_argument);
  EXPECT_THROW(spectral_error_report(exp_cos(), std::vector<int>{14}, 14), std::invalid_argument);
  EXPECT_THROW(poisson_kernel(1.0), std::invalid_argument);
}

}  // namespace
}  // namespace qpde
