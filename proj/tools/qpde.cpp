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

// qpde: variational ground-state solver experiments.
//
//   qpde solve    --config ho.toml
//   qpde sweep    --qubits 2,3,4 --ansatz zgr,ry1 --optimizer adam,spsa
//   qpde noise    --config ho_noise.toml --theta results/theta_opt.json
//   qpde validate [--inject-fault qft-sign|momentum-order]
//
// Exit codes: 0 success, 2 configuration error, 3 validation failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpde/experiment.hpp"
#include "qpde/validate.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;

struct Overrides {
  std::string config;
  std::optional<std::string> problem;
  std::vector<int> qubits;
  std::vector<std::string> ansatz;
  std::vector<std::string> optimizer;
  std::vector<std::int64_t> shots;
  std::optional<int> reps;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<int> iterations;
  bool trajectories = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config, "TOML experiment file")->check(CLI::ExistingFile);
  cmd->add_option("--problem", o.problem, "harmonic_oscillator | transmon | flux_qubit");
  cmd->add_option("--qubits", o.qubits, "qubit counts")->delimiter(',');
  cmd->add_option("--ansatz", o.ansatz, "zgr, ry1, ry2, ...")->delimiter(',');
  cmd->add_option("--optimizer", o.optimizer, "adam, spsa, nelder_mead")->delimiter(',');
  cmd->add_option("--shots", o.shots, "shots per expectation (0 = exact)")->delimiter(',');
  cmd->add_option("--reps", o.reps, "repetitions per cell");
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores, capped by QPDE_THREADS)");
  cmd->add_option("--iterations", o.iterations, "optimizer iterations");
  cmd->add_flag("--trajectories", o.trajectories, "write one CSV per run");
}

qpde::ExperimentConfig build_config(const Overrides& o) {
  qpde::ExperimentConfig c = o.config.empty() ? qpde::ExperimentConfig{} : qpde::load_config(o.config);
  try {
    if (o.problem) {
      const qpde::Problem fresh = qpde::Problem::from_name(*o.problem);
      c.problem.kind = fresh.kind;
    }
  } catch (const std::invalid_argument& e) {
    throw qpde::ConfigError("problem", e.what());
  }
  if (!o.qubits.empty()) c.qubits = o.qubits;
  if (!o.ansatz.empty()) {
    const qpde::AnsatzSpec base = c.ansatze.front();
    c.ansatze.clear();
    for (const auto& label : o.ansatz) {
      qpde::AnsatzSpec s;
      try {
        s = qpde::parse_ansatz_label(label);
      } catch (const std::invalid_argument& e) {
        throw qpde::ConfigError("ansatz", e.what());
      }
      s.symmetrized = base.symmetrized;
      s.parity = base.parity;
      c.ansatze.push_back(s);
    }
  }
  if (!o.optimizer.empty()) {
    const qpde::OptimizerConfig base = c.optimizers.front();
    c.optimizers.clear();
    for (const auto& name : o.optimizer) {
      qpde::OptimizerConfig oc = base;
      try {
        oc.method = qpde::parse_optimizer_method(name);
      } catch (const std::invalid_argument& e) {
        throw qpde::ConfigError("optimizer", e.what());
      }
      c.optimizers.push_back(oc);
    }
  }
  if (o.iterations) {
    for (auto& oc : c.optimizers) oc.max_iterations = *o.iterations;
  }
  if (!o.shots.empty()) c.shots = o.shots;
  if (o.reps) c.repetitions = *o.reps;
  if (o.seed) c.base_seed = *o.seed;
  if (o.out) c.output = *o.out;
  if (o.threads) c.threads = *o.threads;
  if (o.trajectories) c.write_trajectories = true;
  c.validate();
  return c;
}

void print_cells(const qpde::SweepResult& result) {
  std::printf("%-28s %6s %14s %14s %12s %12s\n", "cell", "fails", "1-F_inf med", "1-F_inf std", "eps med",
              "1-F_t");
  for (const auto& s : result.cells) {
    std::printf("%-28s %6zu %14.4e %14.4e %12.4e %12.4e\n", s.cell.label().c_str(), s.failures,
                s.infidelity_inf.median, s.infidelity_inf.std, s.epsilon.median, s.theoretical_infidelity);
  }
}

int run_experiments(const Overrides& o, bool sweep) {
  const qpde::ExperimentConfig config = build_config(o);
  if (!sweep) {
    const auto cells = qpde::expand_cells(config);
    if (cells.size() != 1) {
      throw qpde::ConfigError("qubits/ansatz/optimizer/shots", "solve takes a single cell; use sweep for lists");
    }
  }
  qpde::ReferenceCache cache(config.reference_cache);
  std::size_t done = 0;
  const std::size_t total = qpde::expand_cells(config).size() * static_cast<std::size_t>(config.repetitions);
  const auto result = qpde::run_sweep(config, cache, [&](const qpde::RunRecord& r) {
    ++done;
    if (!r.ok()) std::cerr << "run " << r.cell.label() << " rep " << r.repetition << " failed: " << r.error << '\n';
    std::cerr << "\r[" << done << "/" << total << "]" << std::flush;
  });
  std::cerr << '\n';
  std::filesystem::create_directories(config.output);
  qpde::write_runs_csv(config.output / "runs.csv", config, result);
  qpde::write_summary_json(config.output / "summary.json", config, result);
  const auto best = qpde::best_parameters(result, config.problem);
  if (sweep) {
    qpde::write_cell_summaries(config.output / "cells", config, result);
    for (const auto& a : best) {
      qpde::write_theta_json(config.output / "theta" /
                                 ("n" + std::to_string(a.ansatz.num_qubits) + "_" + a.ansatz.label() + ".json"),
                             a);
    }
  } else if (!best.empty()) {
    qpde::write_theta_json(config.output / "theta_opt.json", best.front());
  }
  print_cells(result);
  std::cout << "wrote " << (config.output / "runs.csv").string() << " and summary.json\n";
  return 0;
}

struct NoiseOptions {
  std::string theta;
  std::vector<double> t1_us;
  std::optional<int> degree;
  std::optional<std::string> mode;
  std::optional<double> readout;
  std::optional<int> reps;
  std::optional<std::int64_t> shots;
};

int run_noise_command(const Overrides& o, const NoiseOptions& n) {
  qpde::ExperimentConfig config = build_config(o);
  if (!n.t1_us.empty()) {
    config.zne.t1_grid.clear();
    for (double t : n.t1_us) config.zne.t1_grid.push_back(t * 1e-6);
  }
  if (n.degree) config.zne.degree = *n.degree;
  if (n.mode) {
    if (*n.mode == "richardson") {
      config.zne.mode = qpde::ZneMode::kRichardson;
    } else if (*n.mode == "least_squares") {
      config.zne.mode = qpde::ZneMode::kLeastSquares;
    } else {
      throw qpde::ConfigError("zne.mode", "expected least_squares or richardson");
    }
  }
  if (n.readout) config.zne.readout = *n.readout;
  if (n.reps) config.zne.repetitions = *n.reps;
  if (n.shots) config.zne.shots = *n.shots;
  if (!n.theta.empty()) config.theta_file = n.theta;
  config.validate();

  qpde::ThetaArtifact artifact;
  if (!config.theta.empty()) {
    artifact.problem = config.problem.name();
    artifact.ansatz = config.ansatze.front();
    artifact.ansatz.num_qubits = config.qubits.front();
    artifact.theta = config.theta;
    if (artifact.theta.size() != qpde::parameter_count(artifact.ansatz)) {
      throw qpde::ConfigError("zne.theta_values", "parameter count does not match the ansatz");
    }
  } else if (!config.theta_file.empty()) {
    artifact = qpde::read_theta_json(config.theta_file);
  } else {
    throw qpde::ConfigError("theta", "no optimal parameters: pass --theta FILE or zne.theta_values");
  }
  qpde::ReferenceCache cache(config.reference_cache);
  const auto report = qpde::run_noise(config, artifact, cache);
  qpde::write_zne_json(config.output / "zne.json", report);
  qpde::write_zne_csv(config.output / "zne_points.csv", report);
  std::printf("%10s %16s %14s %12s\n", "T1 [us]", "mean E", "std E", "epsilon");
  for (const auto& r : report.rows) {
    std::printf("%10.1f %16.8f %14.6e %12.4e\n", r.t1 * 1e6, r.mean_energy, r.std_energy, r.epsilon);
  }
  std::printf("extrapolated E0 = %.8f, epsilon = %.4e (degree %d, %zu points)\n", report.fit.e0,
              report.epsilon_extrapolated, report.fit.degree, report.fit.points_used);
  std::printf("circuit infidelity: position %.4e, momentum %.4e\n", 1.0 - report.probe.fx, 1.0 - report.probe.fp);
  return 0;
}

int run_validate(const std::string& fault_name) {
  qpde::Fault fault;
  try {
    fault = qpde::parse_fault(fault_name);
  } catch (const std::invalid_argument& e) {
    throw qpde::ConfigError("inject-fault", e.what());
  }
  const auto results = qpde::run_validation(fault);
  bool all = true;
  for (const auto& r : results) {
    std::printf("%-4s %-38s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
    all = all && r.passed;
  }
  std::printf("%s\n", all ? "all checks passed" : "validation FAILED");
  return all ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational quantum Fourier solver experiments"};
  app.require_subcommand(1);
  Overrides common;
  NoiseOptions noise_opts;
  std::string fault;

  auto* solve = app.add_subcommand("solve", "optimize one cell for every repetition");
  add_common(solve, common);
  auto* sweep = app.add_subcommand("sweep", "Cartesian sweep over qubits, ansatze, optimizers and shots");
  add_common(sweep, common);
  auto* noise = app.add_subcommand("noise", "T1 sweep of a stored optimum and zero-noise extrapolation");
  add_common(noise, common);
  noise->add_option("--theta", noise_opts.theta, "optimal-parameter JSON written by solve");
  noise->add_option("--t1-us", noise_opts.t1_us, "T1 grid in microseconds")->delimiter(',');
  noise->add_option("--degree", noise_opts.degree, "polynomial degree in 1/T1");
  noise->add_option("--mode", noise_opts.mode, "least_squares | richardson");
  noise->add_option("--readout", noise_opts.readout, "readout flip probability during the sweep");
  noise->add_option("--zne-reps", noise_opts.reps, "repetitions per T1 point");
  noise->add_option("--zne-shots", noise_opts.shots, "shots per repetition");
  auto* validate = app.add_subcommand("validate", "run the invariant suite");
  validate->add_option("--inject-fault", fault, "qft-sign | momentum-order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*solve) return run_experiments(common, false);
    if (*sweep) return run_experiments(common, true);
    if (*noise) return run_noise_command(common, noise_opts);
    if (*validate) return run_validate(fault);
  } catch (const qpde::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
