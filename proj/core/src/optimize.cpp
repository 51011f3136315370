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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "qpde/rng.hpp"

namespace qpde {

namespace {

// Stream tags keep the evaluation seeds of different call sites apart.
enum : std::uint64_t { kTagRecord = 1, kTagGradient = 2, kTagSpsaPlus = 3, kTagSpsaMinus = 4,
                       kTagSpsaDelta = 5, kTagCalibrate = 6, kTagSimplex = 7 };

class Evaluator {
 public:
  Evaluator(const Objective& objective, Trajectory& trajectory)
      : objective_(objective), trajectory_(trajectory) {
    if (!objective_.estimate) throw std::invalid_argument("objective has no energy function");
  }

  double operator()(std::span<const double> theta, std::uint64_t seed) {
    const double e = objective_.estimate(theta, seed);
    ++trajectory_.evaluations;
    if (!std::isfinite(e)) {
      throw std::runtime_error("energy evaluation returned " + std::to_string(e) + " after " +
                               std::to_string(trajectory_.evaluations) + " evaluations");
    }
    return e;
  }

  void record(int iteration, std::span<const double> theta, double energy, double grad_norm) {
    TrajectoryPoint p;
    p.iteration = iteration;
    p.theta.assign(theta.begin(), theta.end());
    p.energy = energy;
    p.gradient_norm = grad_norm;
    if (objective_.exact) p.exact_energy = objective_.exact(theta);
    trajectory_.points.push_back(std::move(p));
  }

  void finish(std::span<const double> theta, double energy) {
    trajectory_.theta_opt.assign(theta.begin(), theta.end());
    trajectory_.energy_opt = energy;
    if (objective_.exact) trajectory_.exact_opt = objective_.exact(theta);
  }

 private:
  const Objective& objective_;
  Trajectory& trajectory_;
};

double norm2(std::span<const double> v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

void check_theta(const std::vector<double>& theta) {
  if (theta.empty()) throw std::invalid_argument("empty parameter vector");
  for (double t : theta) {
    if (!std::isfinite(t)) throw std::invalid_argument("non-finite initial parameter");
  }
}

}  // namespace

std::string to_string(OptimizerMethod method) {
  switch (method) {
    case OptimizerMethod::kSpsa: return "spsa";
    case OptimizerMethod::kAdam: return "adam";
    case OptimizerMethod::kNelderMead: return "nelder_mead";
  }
  return "unknown";
}

OptimizerMethod parse_optimizer_method(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "spsa") return OptimizerMethod::kSpsa;
  if (s == "adam") return OptimizerMethod::kAdam;
  if (s == "nelder_mead" || s == "nelder-mead" || s == "nm") return OptimizerMethod::kNelderMead;
  throw std::invalid_argument("unknown optimizer '" + name + "'");
}

int OptimizerConfig::effective_iterations() const {
  if (max_iterations > 0) return max_iterations;
  return method == OptimizerMethod::kAdam ? 300 : 500;
}

void OptimizerConfig::validate() const {
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be positive");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw std::invalid_argument("Adam betas must lie in [0, 1)");
  }
  if (!(adam_epsilon > 0.0) || learning_rate_decay < 0.0) throw std::invalid_argument("invalid Adam settings");
  if (spsa_a < 0.0 || !(spsa_c > 0.0) || spsa_big_a < 0.0 || !(spsa_first_step > 0.0)) {
    throw std::invalid_argument("invalid SPSA gains");
  }
  if (spsa_calibration_samples < 1) throw std::invalid_argument("SPSA calibration needs >= 1 sample");
  if (!(nm_initial_step > 0.0)) throw std::invalid_argument("nm_initial_step must be positive");
}

std::vector<double> parameter_shift_gradient(const EnergyFunction& energy,
                                             std::span<const double> theta, std::uint64_t seed) {
  constexpr double kShift = std::numbers::pi / 2;
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    shifted[k] = theta[k] + kShift;
    const double plus = energy(shifted, derive_seed(seed, {k, 0}));
    shifted[k] = theta[k] - kShift;
    const double minus = energy(shifted, derive_seed(seed, {k, 1}));
    shifted[k] = theta[k];
    grad[k] = 0.5 * (plus - minus);
  }
  return grad;
}

std::vector<double> finite_difference_gradient(const ExactEnergyFunction& energy,
                                               std::span<const double> theta, double h) {
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    shifted[k] = theta[k] + h;
    const double plus = energy(shifted);
    shifted[k] = theta[k] - h;
    const double minus = energy(shifted);
    shifted[k] = theta[k];
    grad[k] = (plus - minus) / (2 * h);
  }
  return grad;
}

Trajectory adam_minimize(const Objective& objective, std::vector<double> theta,
                         const OptimizerConfig& config) {
  config.validate();
  check_theta(theta);
  Trajectory traj;
  Evaluator eval(objective, traj);
  const EnergyFunction counted = [&](std::span<const double> t, std::uint64_t s) { return eval(t, s); };
  const int iterations = config.effective_iterations();
  const std::size_t p = theta.size();
  std::vector<double> m(p, 0.0), v(p, 0.0);

  double energy = eval(theta, derive_seed(config.seed, {kTagRecord, 0}));
  eval.record(0, theta, energy, std::numeric_limits<double>::quiet_NaN());
  for (int k = 1; k <= iterations; ++k) {
    const auto uk = static_cast<std::uint64_t>(k);
    const auto g = parameter_shift_gradient(counted, theta, derive_seed(config.seed, {kTagGradient, uk}));
    const double lr = config.learning_rate / (1.0 + config.learning_rate_decay * (k - 1));
    const double bc1 = 1.0 - std::pow(config.beta1, k);
    const double bc2 = 1.0 - std::pow(config.beta2, k);
    for (std::size_t i = 0; i < p; ++i) {
      m[i] = config.beta1 * m[i] + (1 - config.beta1) * g[i];
      v[i] = config.beta2 * v[i] + (1 - config.beta2) * g[i] * g[i];
      theta[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + config.adam_epsilon);
    }
    energy = eval(theta, derive_seed(config.seed, {kTagRecord, uk}));
    eval.record(k, theta, energy, norm2(g));
  }
  eval.finish(theta, energy);
  return traj;
}

Trajectory spsa_minimize(const Objective& objective, std::vector<double> theta,
                         const OptimizerConfig& config) {
  config.validate();
  check_theta(theta);
  Trajectory traj;
  Evaluator eval(objective, traj);
  const int iterations = config.effective_iterations();
  const std::size_t p = theta.size();
  std::mt19937_64 delta_rng(derive_seed(config.seed, {kTagSpsaDelta}));
  std::bernoulli_distribution coin(0.5);
  auto draw_delta = [&](std::mt19937_64& rng) {
    std::vector<double> d(p);
    for (auto& x : d) x = coin(rng) ? 1.0 : -1.0;
    return d;
  };
  auto perturbed = [&](const std::vector<double>& d, double scale) {
    std::vector<double> t = theta;
    for (std::size_t i = 0; i < p; ++i) t[i] += scale * d[i];
    return t;
  };

  double a = config.spsa_a;
  if (a == 0.0) {
    // Pick a so that the first update moves each component by about
    // spsa_first_step, given the average gradient magnitude at theta0.
    std::mt19937_64 cal_rng(derive_seed(config.seed, {kTagCalibrate}));
    double mean_mag = 0.0;
    for (int s = 0; s < config.spsa_calibration_samples; ++s) {
      const auto d = draw_delta(cal_rng);
      const auto us = static_cast<std::uint64_t>(s);
      const double ep = eval(perturbed(d, config.spsa_c), derive_seed(config.seed, {kTagCalibrate, us, 0}));
      const double em = eval(perturbed(d, -config.spsa_c), derive_seed(config.seed, {kTagCalibrate, us, 1}));
      mean_mag += std::abs(ep - em) / (2 * config.spsa_c);
    }
    mean_mag /= config.spsa_calibration_samples;
    const double a0_scale = std::pow(config.spsa_big_a + 1.0, config.spsa_alpha);
    a = mean_mag > 0.0 ? config.spsa_first_step * a0_scale / mean_mag : config.spsa_first_step * a0_scale;
  }

  double energy = eval(theta, derive_seed(config.seed, {kTagRecord, 0}));
  eval.record(0, theta, energy, std::numeric_limits<double>::quiet_NaN());
  for (int k = 0; k < iterations; ++k) {
    const auto uk = static_cast<std::uint64_t>(k + 1);
    const double ak = a / std::pow(k + 1 + config.spsa_big_a, config.spsa_alpha);
    const double ck = config.spsa_c / std::pow(k + 1, config.spsa_gamma);
    const auto d = draw_delta(delta_rng);
    const double ep = eval(perturbed(d, ck), derive_seed(config.seed, {kTagSpsaPlus, uk}));
    const double em = eval(perturbed(d, -ck), derive_seed(config.seed, {kTagSpsaMinus, uk}));
    const double slope = (ep - em) / (2 * ck);
    std::vector<double> g(p);
    for (std::size_t i = 0; i < p; ++i) {
      g[i] = slope * d[i];  // 1 / d_i = d_i for +-1 perturbations
      theta[i] -= ak * g[i];
    }
    energy = eval(theta, derive_seed(config.seed, {kTagRecord, uk}));
    eval.record(k + 1, theta, energy, norm2(g));
  }
  eval.finish(theta, energy);
  return traj;
}

Trajectory nelder_mead_minimize(const Objective& objective, std::vector<double> theta,
                                const OptimizerConfig& config) {
  config.validate();
  check_theta(theta);
  Trajectory traj;
  Evaluator eval(objective, traj);
  const int iterations = config.effective_iterations();
  const std::size_t p = theta.size();
  const double dim = static_cast<double>(p);
  // Dimension-adaptive coefficients (Gao and Han, 2012).
  const double rho = 1.0;
  const double chi = 1.0 + 2.0 / dim;
  const double psi = 0.75 - 1.0 / (2.0 * dim);
  const double sigma = p > 1 ? 1.0 - 1.0 / dim : 0.5;

  std::uint64_t counter = 0;
  auto f = [&](const std::vector<double>& x) {
    return eval(x, derive_seed(config.seed, {kTagSimplex, counter++}));
  };

  std::vector<std::vector<double>> simplex(p + 1, theta);
  for (std::size_t i = 0; i < p; ++i) simplex[i + 1][i] += config.nm_initial_step;
  std::vector<double> values(p + 1);
  for (std::size_t i = 0; i <= p; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(p + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<double>> s(p + 1);
    std::vector<double> v(p + 1);
    for (std::size_t i = 0; i <= p; ++i) {
      s[i] = std::move(simplex[order[i]]);
      v[i] = values[order[i]];
    }
    simplex = std::move(s);
    values = std::move(v);
  };
  auto combine = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> x(p);
    for (std::size_t i = 0; i < p; ++i) x[i] = c[i] + t * (w[i] - c[i]);
    return x;
  };

  sort_simplex();
  eval.record(0, simplex[0], values[0], std::numeric_limits<double>::quiet_NaN());
  for (int k = 1; k <= iterations; ++k) {
    double xspread = 0.0;
    for (std::size_t i = 1; i <= p; ++i) {
      for (std::size_t j = 0; j < p; ++j) xspread = std::max(xspread, std::abs(simplex[i][j] - simplex[0][j]));
    }
    if (xspread <= config.nm_xtol && values[p] - values[0] <= config.nm_ftol) break;

    std::vector<double> centroid(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) centroid[j] += simplex[i][j] / dim;
    }
    const auto xr = combine(centroid, simplex[p], -rho);
    const double fr = f(xr);
    bool shrink = false;
    if (fr < values[0]) {
      const auto xe = combine(centroid, simplex[p], -rho * chi);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[p] = xe;
        values[p] = fe;
      } else {
        simplex[p] = xr;
        values[p] = fr;
      }
    } else if (fr < values[p - 1]) {
      simplex[p] = xr;
      values[p] = fr;
    } else if (fr < values[p]) {
      const auto xc = combine(centroid, simplex[p], -rho * psi);
      const double fc = f(xc);
      if (fc <= fr) {
        simplex[p] = xc;
        values[p] = fc;
      } else {
        shrink = true;
      }
    } else {
      const auto xcc = combine(centroid, simplex[p], psi);
      const double fcc = f(xcc);
      if (fcc < values[p]) {
        simplex[p] = xcc;
        values[p] = fcc;
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t i = 1; i <= p; ++i) {
        simplex[i] = combine(simplex[0], simplex[i], sigma);
        values[i] = f(simplex[i]);
      }
    }
    sort_simplex();
    eval.record(k, simplex[0], values[0], std::numeric_limits<double>::quiet_NaN());
  }
  eval.finish(simplex[0], values[0]);
  return traj;
}

Trajectory minimize(const Objective& objective, std::vector<double> theta0,
                    const OptimizerConfig& config) {
  switch (config.method) {
    case OptimizerMethod::kAdam: return adam_minimize(objective, std::move(theta0), config);
    case OptimizerMethod::kSpsa: return spsa_minimize(objective, std::move(theta0), config);
    case OptimizerMethod::kNelderMead: return nelder_mead_minimize(objective, std::move(theta0), config);
  }
  throw std::invalid_argument("unknown optimizer");
}

std::vector<double> initial_parameters(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  std::vector<double> theta(count);
  for (auto& t : theta) t = u(rng);
  return theta;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "iteration,energy,exact_energy,gradient_norm\n";
  const auto old = out.precision(17);
  for (const auto& p : trajectory.points) {
    out << p.iteration << ',' << p.energy << ',';
    if (std::isfinite(p.exact_energy)) out << p.exact_energy;
    out << ',';
    if (std::isfinite(p.gradient_norm)) out << p.gradient_norm;
    out << '\n';
  }
  out.precision(old);
}

}  // namespace qpde
