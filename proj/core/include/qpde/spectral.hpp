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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "qpde/fourier.hpp"

namespace qpde {

enum class Smoothness {
  kAnalytic,  ///< periodic and analytic in a strip: exponential convergence
  kFinite,    ///< the order-th derivative jumps: algebraic convergence
  kStep,      ///< jump discontinuity: Gibbs overshoot
};

/// A 2 pi periodic test function with its derivative.
struct SpectralTestFunction {
  std::string name;
  RealFunction f;
  RealFunction derivative;
  Smoothness smoothness = Smoothness::kAnalytic;
  int order = 0;  ///< derivative index of the first jump (kFinite only)
};

/// (1 - r^2) / (1 - 2 r cos x + r^2); Fourier coefficients r^|k|.
SpectralTestFunction poisson_kernel(double r);
/// exp(cos x)
SpectralTestFunction exp_cos();
/// Periodized Bernoulli polynomial B_{m+1}(x / 2 pi): C^{m-1} with a jump in
/// the m-th derivative. Supports 1 <= m <= 3.
SpectralTestFunction bernoulli_periodic(int m);
/// 1 on (0, pi), 0 on (pi, 2 pi), 1/2 at the jumps.
SpectralTestFunction unit_step();

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct SpectralErrorRow {
  int num_qubits = 0;
  std::size_t points = 0;
  double interpolation_l2 = 0.0;   ///< ||f - I_N f||_2 on [0, 2 pi)
  double interpolation_max = 0.0;  ///< max |f - I_N f| on the reference grid
  double derivative_l2 = 0.0;      ///< ||f' - d/dx I_N f||_2
  double derivative_max = 0.0;
  double truncation_overshoot = 0.0;     ///< (max P_N f - sup f) / jump
  double interpolation_overshoot = 0.0;  ///< (max I_N f - sup f) / jump
};

struct SpectralErrorReport {
  std::string function_name;
  Smoothness smoothness = Smoothness::kAnalytic;
  std::vector<SpectralErrorRow> rows;
  /// log(interpolation_l2) against N; meaningful for analytic inputs.
  LineFit exponential_fit;
  /// log(interpolation_max) against log N; order = -slope.
  LineFit algebraic_fit;
  /// log(derivative_max) against log N.
  LineFit derivative_fit;
};

/// Interpolation, differentiation and truncation errors for N = 2^n points
/// on [0, 2 pi). Norms use the trapezoidal rule on a 2^reference_qubits grid;
/// the truncated series P_N takes its coefficients from that grid too.
SpectralErrorReport spectral_error_report(const SpectralTestFunction& test,
                                          std::span<const int> n_list,
                                          int reference_qubits = 14);

}  // namespace qpde
