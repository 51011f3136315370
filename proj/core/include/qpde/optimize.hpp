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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace qpde {

/// Energy estimate at theta. `eval_seed` selects the shot-noise stream and
/// is ignored by deterministic objectives.
using EnergyFunction = std::function<double(std::span<const double> theta, std::uint64_t eval_seed)>;
using ExactEnergyFunction = std::function<double(std::span<const double> theta)>;

struct Objective {
  EnergyFunction estimate;
  /// Optional noiseless energy, recorded next to the estimates.
  ExactEnergyFunction exact;
};

enum class OptimizerMethod { kSpsa, kAdam, kNelderMead };

std::string to_string(OptimizerMethod method);
/// "spsa", "adam", "nelder_mead" (or "nelder-mead", "nm").
OptimizerMethod parse_optimizer_method(const std::string& name);

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::kAdam;
  /// 0 selects the method default: Adam 300, SPSA 500, Nelder-Mead 500.
  int max_iterations = 0;
  std::uint64_t seed = 0;

  // Adam
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  /// Step size learning_rate / (1 + k * decay) at iteration k.
  double learning_rate_decay = 0.0;

  // SPSA
  double spsa_a = 0.0;  ///< 0 calibrates a from the gradient scale at theta0
  double spsa_c = 0.1;
  double spsa_big_a = 30.0;
  double spsa_alpha = 0.602;
  double spsa_gamma = 0.101;
  double spsa_first_step = 0.1;  ///< calibration target for |a_0 g_i|
  int spsa_calibration_samples = 20;

  // Nelder-Mead
  double nm_initial_step = 0.25;
  double nm_xtol = 1e-10;
  double nm_ftol = 1e-14;

  int effective_iterations() const;
  /// Throws std::invalid_argument on out-of-range hyperparameters.
  void validate() const;
};

struct TrajectoryPoint {
  int iteration = 0;
  std::vector<double> theta;
  double energy = 0.0;
  double exact_energy = std::numeric_limits<double>::quiet_NaN();
  double gradient_norm = std::numeric_limits<double>::quiet_NaN();
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  std::vector<double> theta_opt;
  double energy_opt = 0.0;  ///< estimate at theta_opt
  double exact_opt = std::numeric_limits<double>::quiet_NaN();
  std::int64_t evaluations = 0;
};

/// dE/dtheta_k = [E(theta + pi/2 e_k) - E(theta - pi/2 e_k)] / 2, every
/// evaluation on its own stream of `seed`.
std::vector<double> parameter_shift_gradient(const EnergyFunction& energy,
                                             std::span<const double> theta, std::uint64_t seed);

std::vector<double> finite_difference_gradient(const ExactEnergyFunction& energy,
                                               std::span<const double> theta, double h = 1e-5);

Trajectory adam_minimize(const Objective& objective, std::vector<double> theta0,
                         const OptimizerConfig& config);
Trajectory spsa_minimize(const Objective& objective, std::vector<double> theta0,
                         const OptimizerConfig& config);
Trajectory nelder_mead_minimize(const Objective& objective, std::vector<double> theta0,
                                const OptimizerConfig& config);
/// Dispatches on config.method.
Trajectory minimize(const Objective& objective, std::vector<double> theta0,
                    const OptimizerConfig& config);

/// theta_i ~ U(-0.1, 0.1).
std::vector<double> initial_parameters(std::size_t count, std::uint64_t seed);

/// iteration,energy,exact_energy,gradient_norm
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace qpde
