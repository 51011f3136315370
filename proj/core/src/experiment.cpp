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

#include "qpde/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qpde/rng.hpp"

namespace qpde {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json aggregate_json(const Aggregate& a) {
  return {{"median", a.median}, {"std", a.std}, {"mean", a.mean}, {"count", a.count}};
}

Aggregate aggregate_or_nan(const std::vector<double>& v) {
  if (v.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, nan, 0};
  }
  return aggregate(v);
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

json ansatz_json(const AnsatzSpec& a) {
  return {{"family", to_string(a.family)}, {"num_qubits", a.num_qubits}, {"depth", a.depth},
          {"symmetrized", a.symmetrized}, {"parity", a.parity}};
}

}  // namespace

int worker_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("QPDE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

AnsatzSpec parse_ansatz_label(const std::string& label) {
  std::string s = label;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  AnsatzSpec spec;
  if (s == "zgr") {
    spec.family = AnsatzFamily::kZGR;
    return spec;
  }
  if (s.rfind("ry", 0) == 0) {
    spec.family = AnsatzFamily::kRY;
    const std::string digits = s.substr(2);
    if (digits.empty()) return spec;
    if (digits.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad ansatz label '" + label + "'");
    }
    spec.depth = std::stoi(digits);
    return spec;
  }
  throw std::invalid_argument("unknown ansatz '" + label + "'");
}

void ExperimentConfig::validate() const {
  if (qubits.empty()) throw ConfigError("qubits", "empty sweep list");
  for (int n : qubits) {
    if (n < 2 || n > kMaxReferenceQubits) throw ConfigError("qubits", "each entry must be in [2, 12]");
  }
  if (ansatze.empty()) throw ConfigError("ansatz", "empty sweep list");
  for (const auto& a : ansatze) {
    for (int n : qubits) {
      AnsatzSpec s = a;
      s.num_qubits = n;
      try {
        s.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError("ansatz", e.what());
      }
    }
  }
  if (optimizers.empty()) throw ConfigError("optimizer", "empty sweep list");
  for (const auto& o : optimizers) {
    try {
      o.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("optimizer", e.what());
    }
  }
  if (shots.empty()) throw ConfigError("shots", "empty sweep list");
  for (auto s : shots) {
    if (s < 0) throw ConfigError("shots", "must be >= 0");
  }
  if (repetitions < 1) throw ConfigError("repetitions", "must be >= 1");
  if (noise) {
    try {
      noise->validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("noise", e.what());
    }
    for (int n : qubits) {
      if (n > kMaxNoisyQubits) throw ConfigError("noise", "noisy runs support at most 8 qubits");
    }
  }
  if (zne.t1_grid.empty()) throw ConfigError("zne.t1_us", "empty T1 grid");
  for (double t : zne.t1_grid) {
    if (!(t > 0.0)) throw ConfigError("zne.t1_us", "T1 values must be positive");
  }
  if (zne.degree < 0 || zne.degree > kMaxZneDegree) throw ConfigError("zne.degree", "must be in [0, 5]");
  if (!(zne.t2_ratio > 0.0 && zne.t2_ratio <= 2.0)) throw ConfigError("zne.t2_ratio", "must be in (0, 2]");
  if (!(zne.readout >= 0.0 && zne.readout <= 1.0)) throw ConfigError("zne.readout", "must be in [0, 1]");
  if (zne.repetitions < 1) throw ConfigError("zne.repetitions", "must be >= 1");
  if (zne.shots < 1) throw ConfigError("zne.shots", "must be >= 1");
  if (threads < 0) throw ConfigError("threads", "must be >= 0");
}

std::string CellSpec::label() const {
  return "n" + std::to_string(num_qubits) + "_" + ansatz.label() + (ansatz.parity ? "odd" : "") +
         "_" + to_string(optimizer.method) + "_s" + std::to_string(shots);
}

std::vector<CellSpec> expand_cells(const ExperimentConfig& config) {
  std::vector<CellSpec> cells;
  for (int n : config.qubits) {
    for (const auto& a : config.ansatze) {
      for (const auto& o : config.optimizers) {
        for (auto s : config.shots) {
          CellSpec c;
          c.index = cells.size();
          c.num_qubits = n;
          c.ansatz = a;
          c.ansatz.num_qubits = n;
          c.optimizer = o;
          c.shots = s;
          cells.push_back(c);
        }
      }
    }
  }
  return cells;
}

Objective make_objective(const Problem& problem, const CellSpec& cell,
                         const std::optional<NoiseModel>& noise) {
  auto h = std::make_shared<const Hamiltonian>(build_hamiltonian(problem, cell.num_qubits));
  const AnsatzSpec spec = cell.ansatz;
  const int n = cell.num_qubits;
  auto state_of = [spec, n](std::span<const double> theta) {
    return run_circuit(build_ansatz(spec, theta), QuantumState(n));
  };
  Objective obj;
  obj.exact = [h, state_of](std::span<const double> theta) {
    return exact_energy(state_of(theta), *h).value;
  };
  const std::int64_t shots = cell.shots;
  if (noise) {
    const NoiseModel model = *noise;
    obj.estimate = [h, spec, model, shots](std::span<const double> theta, std::uint64_t seed) {
      return noisy_energy(build_ansatz(spec, theta), *h, model, shots, seed).value;
    };
  } else if (shots == 0) {
    obj.estimate = [exact = obj.exact](std::span<const double> theta, std::uint64_t) {
      return exact(theta);
    };
  } else {
    obj.estimate = [h, state_of, shots](std::span<const double> theta, std::uint64_t seed) {
      return sampled_energy(state_of(theta), *h, shots, seed).value;
    };
  }
  return obj;
}

RunRecord run_single(const ExperimentConfig& config, const CellSpec& cell, int repetition,
                     ReferenceCache& cache, Trajectory* trajectory) {
  RunRecord r;
  r.cell = cell;
  r.repetition = repetition;
  r.seed = derive_seed(config.base_seed, {fnv1a(cell.label()), static_cast<std::uint64_t>(repetition)});
  const auto start = std::chrono::steady_clock::now();
  try {
    const Objective obj = make_objective(config.problem, cell, config.noise);
    OptimizerConfig opt = cell.optimizer;
    opt.seed = derive_seed(r.seed, {1});
    const auto theta0 = initial_parameters(parameter_count(cell.ansatz), derive_seed(r.seed, {0}));
    Trajectory traj = minimize(obj, theta0, opt);
    const QuantumState state = run_circuit(build_ansatz(cell.ansatz, traj.theta_opt),
                                           QuantumState(cell.num_qubits));
    r.merit = merit_report(state, traj.energy_opt, config.problem, cache);
    r.exact_energy = traj.exact_opt;
    r.epsilon_exact = epsilon(traj.exact_opt, config.problem, cell.num_qubits, cache);
    r.min_exact_energy = traj.exact_opt;
    for (const auto& p : traj.points) {
      if (std::isfinite(p.exact_energy)) r.min_exact_energy = std::min(r.min_exact_energy, p.exact_energy);
    }
    r.iterations = traj.points.empty() ? 0 : traj.points.back().iteration;
    r.evaluations = traj.evaluations;
    r.theta_opt = traj.theta_opt;
    if (trajectory) *trajectory = std::move(traj);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

SweepResult run_sweep(const ExperimentConfig& config, ReferenceCache& cache,
                      const std::function<void(const RunRecord&)>& on_run) {
  config.validate();
  const auto cells = expand_cells(config);
  const std::size_t reps = static_cast<std::size_t>(config.repetitions);
  const std::size_t jobs = cells.size() * reps;
  SweepResult result;
  result.runs.resize(jobs);

  // Warm the reference cache so workers do not race on the same dense solve.
  for (const auto& cell : cells) {
    cache.get(config.problem, cell.num_qubits);
    cache.fine(config.problem, cell.num_qubits);
  }

  std::atomic<std::size_t> next{0};
  std::mutex callback_mutex;
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const auto& cell = cells[j / reps];
      const int rep = static_cast<int>(j % reps);
      Trajectory traj;
      RunRecord rec = run_single(config, cell, rep, cache, config.write_trajectories ? &traj : nullptr);
      if (config.write_trajectories && rec.ok()) {
        auto out = open_output(config.output / "trajectories" /
                               (cell.label() + "_r" + std::to_string(rep) + ".csv"));
        write_trajectory_csv(out, traj);
      }
      if (on_run) {
        std::lock_guard lock(callback_mutex);
        on_run(rec);
      }
      result.runs[j] = std::move(rec);
    }
  };
  const int nthreads = std::min<int>(worker_threads(config.threads), static_cast<int>(std::max<std::size_t>(jobs, 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellSummary s;
    s.cell = cells[c];
    std::vector<double> inf, infn, eps, epsx;
    for (std::size_t k = 0; k < reps; ++k) {
      const auto& r = result.runs[c * reps + k];
      if (!r.ok()) {
        ++s.failures;
        if (s.error.empty()) s.error = r.error;
        continue;
      }
      inf.push_back(r.merit.infidelity_inf);
      infn.push_back(r.merit.infidelity_n);
      eps.push_back(r.merit.epsilon);
      epsx.push_back(r.epsilon_exact);
    }
    s.infidelity_inf = aggregate_or_nan(inf);
    s.infidelity_n = aggregate_or_nan(infn);
    s.epsilon = aggregate_or_nan(eps);
    s.epsilon_exact = aggregate_or_nan(epsx);
    try {
      s.theoretical_infidelity = theoretical_infidelity(config.problem, cells[c].num_qubits, cache);
    } catch (const std::exception& e) {
      s.theoretical_infidelity = std::numeric_limits<double>::quiet_NaN();
      if (s.error.empty()) s.error = e.what();
    }
    result.cells.push_back(std::move(s));
  }
  return result;
}

std::string config_hash(const ExperimentConfig& config) {
  json j;
  const Problem& p = config.problem;
  j["problem"] = {p.name(), p.mass, p.omega, p.hbar, p.ej, p.ec, p.alpha};
  j["qubits"] = config.qubits;
  for (const auto& a : config.ansatze) j["ansatze"].push_back(ansatz_json(a));
  for (const auto& o : config.optimizers) {
    j["optimizers"].push_back({to_string(o.method), o.effective_iterations(), o.learning_rate, o.beta1,
                               o.beta2, o.adam_epsilon, o.learning_rate_decay, o.spsa_a, o.spsa_c,
                               o.spsa_big_a, o.spsa_alpha, o.spsa_gamma, o.spsa_first_step,
                               o.spsa_calibration_samples, o.nm_initial_step, o.nm_xtol, o.nm_ftol});
  }
  j["shots"] = config.shots;
  j["repetitions"] = config.repetitions;
  j["base_seed"] = config.base_seed;
  if (config.noise) {
    const auto& m = *config.noise;
    json ro = json::array();
    for (const auto& r : m.readout) ro.push_back({r.p1_given_0, r.p0_given_1});
    j["noise"] = {m.t1, m.t2, ro, m.single_qubit_time, m.two_qubit_time,
                  m.single_qubit_depolarizing, m.two_qubit_depolarizing};
  }
  return hex64(fnv1a(j.dump()));
}

void write_runs_csv(const std::filesystem::path& path, const ExperimentConfig& config,
                    const SweepResult& result) {
  auto out = open_output(path);
  out.precision(12);
  out << "config_hash,cell,problem,num_qubits,ansatz,parity,optimizer,shots,repetition,seed,"
         "infidelity_n,infidelity_inf,epsilon,epsilon_exact,energy_opt,exact_energy,energy_tn,e0,e1,"
         "min_exact_energy,iterations,evaluations,wall_seconds,error\n";
  const std::string hash = config_hash(config);
  for (const auto& r : result.runs) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << hash << ',' << r.cell.label() << ',' << config.problem.name() << ',' << r.cell.num_qubits
        << ',' << r.cell.ansatz.label() << ',' << r.cell.ansatz.parity << ','
        << to_string(r.cell.optimizer.method) << ',' << r.cell.shots << ',' << r.repetition << ','
        << r.seed << ',' << r.merit.infidelity_n << ',' << r.merit.infidelity_inf << ','
        << r.merit.epsilon << ',' << r.epsilon_exact << ',' << r.merit.energy_opt << ','
        << r.exact_energy << ',' << r.merit.energy_tn << ',' << r.merit.e0 << ',' << r.merit.e1
        << ',' << r.min_exact_energy << ',' << r.iterations << ',' << r.evaluations << ','
        << r.wall_seconds << ',' << err << '\n';
  }
}

namespace {

json cell_json(const CellSummary& s) {
  json c{{"label", s.cell.label()},
         {"num_qubits", s.cell.num_qubits},
         {"ansatz", ansatz_json(s.cell.ansatz)},
         {"optimizer", to_string(s.cell.optimizer.method)},
         {"iterations", s.cell.optimizer.effective_iterations()},
         {"shots", s.cell.shots},
         {"parameters", parameter_count(s.cell.ansatz)},
         {"cnots", cnot_count(s.cell.ansatz)},
         {"failures", s.failures},
         {"infidelity_inf", aggregate_json(s.infidelity_inf)},
         {"infidelity_n", aggregate_json(s.infidelity_n)},
         {"epsilon", aggregate_json(s.epsilon)},
         {"epsilon_exact", aggregate_json(s.epsilon_exact)},
         {"theoretical_infidelity", s.theoretical_infidelity}};
  if (!s.error.empty()) c["error"] = s.error;
  return c;
}

json summary_header(const ExperimentConfig& config) {
  json j;
  j["config_hash"] = config_hash(config);
  j["problem"] = config.problem.name();
  j["repetitions"] = config.repetitions;
  j["base_seed"] = config.base_seed;
  return j;
}

}  // namespace

void write_summary_json(const std::filesystem::path& path, const ExperimentConfig& config,
                        const SweepResult& result) {
  json j = summary_header(config);
  j["cells"] = json::array();
  for (const auto& s : result.cells) j["cells"].push_back(cell_json(s));
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

void write_cell_summaries(const std::filesystem::path& directory, const ExperimentConfig& config,
                          const SweepResult& result) {
  for (const auto& s : result.cells) {
    json j = summary_header(config);
    j["cell"] = cell_json(s);
    auto out = open_output(directory / (s.cell.label() + ".json"));
    out << j.dump(2) << '\n';
  }
}

void write_theta_json(const std::filesystem::path& path, const ThetaArtifact& artifact) {
  json j{{"problem", artifact.problem},
         {"ansatz", ansatz_json(artifact.ansatz)},
         {"theta", artifact.theta},
         {"exact_energy", artifact.exact_energy}};
  auto out = open_output(path);
  out.precision(17);
  out << j.dump(2) << '\n';
}

ThetaArtifact read_theta_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("theta", "cannot open optimal-parameter file " + path.string());
  try {
    const json j = json::parse(in);
    ThetaArtifact a;
    a.problem = j.at("problem").get<std::string>();
    const auto& s = j.at("ansatz");
    a.ansatz.family = parse_ansatz_family(s.at("family").get<std::string>());
    a.ansatz.num_qubits = s.at("num_qubits").get<int>();
    a.ansatz.depth = s.value("depth", 1);
    a.ansatz.symmetrized = s.value("symmetrized", true);
    a.ansatz.parity = s.value("parity", 0);
    a.theta = j.at("theta").get<std::vector<double>>();
    a.exact_energy = j.value("exact_energy", 0.0);
    if (a.theta.size() != parameter_count(a.ansatz)) {
      throw ConfigError("theta", "parameter count does not match the ansatz");
    }
    return a;
  } catch (const json::exception& e) {
    throw ConfigError("theta", std::string("malformed parameter file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("theta", e.what());
  }
}

std::vector<ThetaArtifact> best_parameters(const SweepResult& result, const Problem& problem) {
  std::vector<ThetaArtifact> out;
  for (const auto& cell : result.cells) {
    const RunRecord* best = nullptr;
    for (const auto& r : result.runs) {
      if (r.cell.index != cell.cell.index || !r.ok()) continue;
      if (!best || r.exact_energy < best->exact_energy) best = &r;
    }
    if (best) out.push_back({problem.name(), best->cell.ansatz, best->theta_opt, best->exact_energy});
  }
  return out;
}

NoiseReport run_noise(const ExperimentConfig& config, const ThetaArtifact& artifact,
                      ReferenceCache& cache) {
  if (artifact.problem != config.problem.name()) {
    throw ConfigError("theta", "parameter file is for '" + artifact.problem + "', config is '" +
                                   config.problem.name() + "'");
  }
  const int n = artifact.ansatz.num_qubits;
  if (n > kMaxNoisyQubits) throw ConfigError("theta", "noisy runs support at most 8 qubits");
  const Circuit circuit = build_ansatz(artifact.ansatz, artifact.theta);
  const Hamiltonian h = build_hamiltonian(config.problem, n);
  const auto ref = cache.get(config.problem, n);
  const ZneConfig& z = config.zne;

  NoiseReport report;
  report.epsilon_noiseless = epsilon(exact_energy(run_circuit(circuit, QuantumState(n)), h).value, *ref);
  report.probe = circuit_fidelity_probe(circuit, config.noise.value_or(NoiseModel::santiago_like()));

  std::vector<ZnePoint> points;
  for (std::size_t i = 0; i < z.t1_grid.size(); ++i) {
    const NoiseModel model = NoiseModel::thermal(z.t1_grid[i], z.t2_ratio, z.readout);
    const auto dist = noisy_distributions(circuit, model);
    std::vector<double> energies(static_cast<std::size_t>(z.repetitions));
    for (int rep = 0; rep < z.repetitions; ++rep) {
      const auto seed = derive_seed(config.base_seed, {fnv1a("zne"), i, static_cast<std::uint64_t>(rep)});
      energies[static_cast<std::size_t>(rep)] =
          sampled_energy(dist.position, dist.momentum, h, z.shots, seed).value;
    }
    const Aggregate a = aggregate(energies);
    report.rows.push_back({z.t1_grid[i], a.mean, a.std, epsilon(a.mean, *ref)});
    points.push_back({z.t1_grid[i], a.mean, a.std});
  }
  try {
    report.fit = zne_extrapolate(points, z.degree, z.mode, z.min_t1);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("zne", e.what());
  }
  report.epsilon_extrapolated = epsilon(report.fit.e0, *ref);
  report.best_single_epsilon = std::numeric_limits<double>::infinity();
  for (const auto& r : report.rows) report.best_single_epsilon = std::min(report.best_single_epsilon, r.epsilon);
  return report;
}

void write_zne_json(const std::filesystem::path& path, const NoiseReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"t1_us", r.t1 * 1e6}, {"mean_energy", r.mean_energy}, {"std_energy", r.std_energy},
                    {"epsilon", r.epsilon}});
  }
  json j{{"E0", report.fit.e0},
         {"coefficients", report.fit.coefficients},
         {"residual", report.fit.residual},
         {"degree", report.fit.degree},
         {"mode", report.fit.mode == ZneMode::kRichardson ? "richardson" : "least_squares"},
         {"points_used", report.fit.points_used},
         {"epsilon_extrapolated", report.epsilon_extrapolated},
         {"epsilon_noiseless", report.epsilon_noiseless},
         {"best_single_epsilon", report.best_single_epsilon},
         {"infidelity_position", 1.0 - report.probe.fx},
         {"infidelity_momentum", 1.0 - report.probe.fp},
         {"points", rows}};
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

void write_zne_csv(const std::filesystem::path& path, const NoiseReport& report) {
  auto out = open_output(path);
  out.precision(12);
  out << "t1_us,mean_energy,std_energy,epsilon\n";
  for (const auto& r : report.rows) {
    out << r.t1 * 1e6 << ',' << r.mean_energy << ',' << r.std_energy << ',' << r.epsilon << '\n';
  }
}

}  // namespace qpde
