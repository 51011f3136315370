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
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qpde/ansatz.hpp"
#include "qpde/metrics.hpp"
#include "qpde/noise.hpp"
#include "qpde/optimize.hpp"
#include "qpde/problems.hpp"

namespace qpde {

/// Invalid configuration; `field()` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ZneConfig {
  std::vector<double> t1_grid{5e-6, 10e-6, 20e-6, 50e-6, 100e-6};  ///< seconds
  int degree = 2;
  ZneMode mode = ZneMode::kLeastSquares;
  double t2_ratio = 1.0;
  double readout = 0.0;  ///< symmetric flip probability kept during the sweep
  double min_t1 = 0.0;   ///< seconds; lower grid points are measured but not fitted
  int repetitions = 100;
  std::int64_t shots = 8192;
};

struct ExperimentConfig {
  Problem problem = Problem::harmonic_oscillator();
  std::vector<int> qubits{3};
  /// num_qubits of each spec is replaced by the sweep's qubit count.
  std::vector<AnsatzSpec> ansatze{AnsatzSpec{}};
  std::vector<OptimizerConfig> optimizers{OptimizerConfig{}};
  std::vector<std::int64_t> shots{8192};  ///< 0 = exact expectations
  int repetitions = 20;
  std::uint64_t base_seed = 0;
  std::filesystem::path output = "results";
  std::optional<NoiseModel> noise;  ///< noisy energy estimates during optimization
  ZneConfig zne;
  std::filesystem::path theta_file;  ///< optimal-parameter artifact for the noise command
  std::vector<double> theta;         ///< inline alternative to theta_file
  int threads = 0;                   ///< 0 = hardware concurrency, capped by QPDE_THREADS
  bool write_trajectories = false;
  std::filesystem::path reference_cache;  ///< empty = in-memory only

  /// Throws ConfigError.
  void validate() const;
};

/// Parses a TOML document. Throws ConfigError.
ExperimentConfig parse_config(std::string_view toml, const std::filesystem::path& origin = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// "zgr", "ry1", "ry2", ... (case-insensitive).
AnsatzSpec parse_ansatz_label(const std::string& label);

/// Worker count after the QPDE_THREADS cap.
int worker_threads(int requested);

struct CellSpec {
  std::size_t index = 0;
  int num_qubits = 0;
  AnsatzSpec ansatz;
  OptimizerConfig optimizer;
  std::int64_t shots = 0;

  /// e.g. "n3_ZGR_adam_s8192"
  std::string label() const;
};

/// Cartesian product qubits x ansatze x optimizers x shots, in that nesting.
std::vector<CellSpec> expand_cells(const ExperimentConfig& config);

struct RunRecord {
  CellSpec cell;
  int repetition = 0;
  std::uint64_t seed = 0;
  MeritReport merit;
  double epsilon_exact = 0.0;  ///< epsilon of the noiseless energy at theta_opt
  double exact_energy = 0.0;
  double min_exact_energy = 0.0;  ///< over every recorded iterate
  int iterations = 0;
  std::int64_t evaluations = 0;
  double wall_seconds = 0.0;
  std::vector<double> theta_opt;
  std::string error;  ///< non-empty when the run failed

  bool ok() const { return error.empty(); }
};

struct CellSummary {
  CellSpec cell;
  Aggregate infidelity_inf;
  Aggregate infidelity_n;
  Aggregate epsilon;
  Aggregate epsilon_exact;
  double theoretical_infidelity = 0.0;
  std::size_t failures = 0;
  std::string error;
};

struct SweepResult {
  std::vector<RunRecord> runs;
  std::vector<CellSummary> cells;
};

/// The objective of one cell: exact or sampled energies of the ansatz state.
Objective make_objective(const Problem& problem, const CellSpec& cell,
                         const std::optional<NoiseModel>& noise = std::nullopt);

/// One optimization run. Never throws for numerical failures; they are
/// reported in RunRecord::error.
RunRecord run_single(const ExperimentConfig& config, const CellSpec& cell, int repetition,
                     ReferenceCache& cache, Trajectory* trajectory = nullptr);

/// Runs every repetition of every cell on a worker pool. Results are
/// ordered by (cell, repetition) and independent of the thread count.
SweepResult run_sweep(const ExperimentConfig& config, ReferenceCache& cache,
                      const std::function<void(const RunRecord&)>& on_run = {});

/// Hex digest of the normalized configuration.
std::string config_hash(const ExperimentConfig& config);

void write_runs_csv(const std::filesystem::path& path, const ExperimentConfig& config,
                    const SweepResult& result);
void write_summary_json(const std::filesystem::path& path, const ExperimentConfig& config,
                        const SweepResult& result);
/// One `<label>.json` per cell in `directory`.
void write_cell_summaries(const std::filesystem::path& directory, const ExperimentConfig& config,
                          const SweepResult& result);

struct ThetaArtifact {
  std::string problem;
  AnsatzSpec ansatz;
  std::vector<double> theta;
  double exact_energy = 0.0;
};
void write_theta_json(const std::filesystem::path& path, const ThetaArtifact& artifact);
ThetaArtifact read_theta_json(const std::filesystem::path& path);

/// The lowest-energy run of each cell, as parameter artifacts.
std::vector<ThetaArtifact> best_parameters(const SweepResult& result, const Problem& problem);

struct ZneRow {
  double t1 = 0.0;
  double mean_energy = 0.0;
  double std_energy = 0.0;
  double epsilon = 0.0;
};

struct NoiseReport {
  std::vector<ZneRow> rows;
  ZneResult fit;
  double epsilon_extrapolated = 0.0;
  double epsilon_noiseless = 0.0;  ///< exact energy of the ideal circuit
  double best_single_epsilon = 0.0;
  CircuitFidelity probe;  ///< under config.noise, or santiago-like if unset
};

/// Mean energy of the artifact's circuit on the T1 grid, then ZNE.
NoiseReport run_noise(const ExperimentConfig& config, const ThetaArtifact& artifact,
                      ReferenceCache& cache);
void write_zne_json(const std::filesystem::path& path, const NoiseReport& report);
void write_zne_csv(const std::filesystem::path& path, const NoiseReport& report);

}  // namespace qpde
