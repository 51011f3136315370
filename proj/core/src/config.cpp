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

// TOML experiment files. Every key is optional; unknown keys are rejected so
// that typos surface as config errors instead of silently using defaults.

#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "qpde/experiment.hpp"

namespace qpde {

namespace {

void reject_unknown(const toml::table& t, const std::string& section, const std::set<std::string>& known) {
  for (const auto& [key, value] : t) {
    if (!known.count(std::string(key.str()))) {
      const std::string where = section.empty() ? std::string(key.str()) : section + "." + std::string(key.str());
      throw ConfigError(where, "unknown key");
    }
  }
}

std::string join(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

double get_double(const toml::table& t, const std::string& section, const std::string& key, double fallback) {
  const auto* node = t.get(key);
  if (!node) return fallback;
  if (auto v = node->value<double>()) return *v;
  throw ConfigError(join(section, key), "expected a number");
}

std::int64_t get_int(const toml::table& t, const std::string& section, const std::string& key,
                     std::int64_t fallback) {
  const auto* node = t.get(key);
  if (!node) return fallback;
  if (!node->is_integer()) throw ConfigError(join(section, key), "expected an integer");
  return node->value<std::int64_t>().value();
}

bool get_bool(const toml::table& t, const std::string& section, const std::string& key, bool fallback) {
  const auto* node = t.get(key);
  if (!node) return fallback;
  if (auto v = node->value<bool>()) return *v;
  throw ConfigError(join(section, key), "expected a boolean");
}

std::string get_string(const toml::table& t, const std::string& section, const std::string& key,
                       const std::string& fallback) {
  const auto* node = t.get(key);
  if (!node) return fallback;
  if (auto v = node->value<std::string>()) return *v;
  throw ConfigError(join(section, key), "expected a string");
}

// A scalar or an array of scalars.
template <typename T>
std::vector<T> get_list(const toml::table& t, const std::string& section, const std::string& key) {
  const auto* node = t.get(key);
  if (!node) return {};
  std::vector<T> out;
  auto take = [&](const toml::node& n) {
    if constexpr (std::is_same_v<T, std::string>) {
      if (auto v = n.value<std::string>()) return out.push_back(*v);
    } else if constexpr (std::is_integral_v<T>) {
      if (n.is_integer()) return out.push_back(static_cast<T>(n.value<std::int64_t>().value()));
    } else {
      if (auto v = n.value<double>()) return out.push_back(*v);
    }
    throw ConfigError(join(section, key), "unexpected value type");
  };
  if (const auto* arr = node->as_array()) {
    for (const auto& n : *arr) take(n);
    if (out.empty()) throw ConfigError(join(section, key), "empty sweep list");
  } else {
    take(*node);
  }
  return out;
}

const toml::table* section_of(const toml::table& root, const std::string& name) {
  const auto* node = root.get(name);
  if (!node) return nullptr;
  if (const auto* t = node->as_table()) return t;
  throw ConfigError(name, "expected a table");
}

void parse_physics(const toml::table& t, Problem& p) {
  reject_unknown(t, "physics", {"mass", "omega", "hbar", "ej", "ec", "alpha"});
  p.mass = get_double(t, "physics", "mass", p.mass);
  p.omega = get_double(t, "physics", "omega", p.omega);
  p.hbar = get_double(t, "physics", "hbar", p.hbar);
  p.ej = get_double(t, "physics", "ej", p.ej);
  p.ec = get_double(t, "physics", "ec", p.ec);
  p.alpha = get_double(t, "physics", "alpha", p.alpha);
  if (!(p.mass > 0 && p.omega > 0 && p.hbar > 0 && p.ej > 0 && p.ec > 0)) {
    throw ConfigError("physics", "physical constants must be positive");
  }
}

std::vector<AnsatzSpec> parse_ansatz(const toml::table& t) {
  reject_unknown(t, "ansatz", {"family", "depth", "symmetrized", "parity"});
  AnsatzSpec base;
  base.depth = static_cast<int>(get_int(t, "ansatz", "depth", base.depth));
  base.symmetrized = get_bool(t, "ansatz", "symmetrized", base.symmetrized);
  base.parity = static_cast<int>(get_int(t, "ansatz", "parity", base.parity));
  auto labels = get_list<std::string>(t, "ansatz", "family");
  if (labels.empty()) labels = {"zgr"};
  std::vector<AnsatzSpec> out;
  for (const auto& l : labels) {
    AnsatzSpec s;
    try {
      s = parse_ansatz_label(l);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("ansatz.family", e.what());
    }
    const bool explicit_depth = l.size() > 2 && (l[0] == 'r' || l[0] == 'R');
    if (!explicit_depth) s.depth = base.depth;
    s.symmetrized = base.symmetrized;
    s.parity = base.parity;
    out.push_back(s);
  }
  return out;
}

std::vector<OptimizerConfig> parse_optimizer(const toml::table& t) {
  const std::string sec = "optimizer";
  reject_unknown(t, sec, {"method", "max_iterations", "learning_rate", "beta1", "beta2", "epsilon",
                          "learning_rate_decay", "spsa_a", "spsa_c", "spsa_A", "spsa_alpha",
                          "spsa_gamma", "spsa_first_step", "spsa_calibration_samples",
                          "nm_initial_step", "nm_xtol", "nm_ftol"});
  OptimizerConfig base;
  base.max_iterations = static_cast<int>(get_int(t, sec, "max_iterations", 0));
  base.learning_rate = get_double(t, sec, "learning_rate", base.learning_rate);
  base.beta1 = get_double(t, sec, "beta1", base.beta1);
  base.beta2 = get_double(t, sec, "beta2", base.beta2);
  base.adam_epsilon = get_double(t, sec, "epsilon", base.adam_epsilon);
  base.learning_rate_decay = get_double(t, sec, "learning_rate_decay", base.learning_rate_decay);
  base.spsa_a = get_double(t, sec, "spsa_a", base.spsa_a);
  base.spsa_c = get_double(t, sec, "spsa_c", base.spsa_c);
  base.spsa_big_a = get_double(t, sec, "spsa_A", base.spsa_big_a);
  base.spsa_alpha = get_double(t, sec, "spsa_alpha", base.spsa_alpha);
  base.spsa_gamma = get_double(t, sec, "spsa_gamma", base.spsa_gamma);
  base.spsa_first_step = get_double(t, sec, "spsa_first_step", base.spsa_first_step);
  base.spsa_calibration_samples =
      static_cast<int>(get_int(t, sec, "spsa_calibration_samples", base.spsa_calibration_samples));
  base.nm_initial_step = get_double(t, sec, "nm_initial_step", base.nm_initial_step);
  base.nm_xtol = get_double(t, sec, "nm_xtol", base.nm_xtol);
  base.nm_ftol = get_double(t, sec, "nm_ftol", base.nm_ftol);
  auto methods = get_list<std::string>(t, sec, "method");
  if (methods.empty()) methods = {"adam"};
  std::vector<OptimizerConfig> out;
  for (const auto& m : methods) {
    OptimizerConfig c = base;
    try {
      c.method = parse_optimizer_method(m);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("optimizer.method", e.what());
    }
    out.push_back(c);
  }
  return out;
}

template <typename T>
std::vector<T> scaled(std::vector<double> v, double factor) {
  std::vector<T> out;
  for (double x : v) out.push_back(static_cast<T>(x * factor));
  return out;
}

NoiseModel parse_noise(const toml::table& t) {
  const std::string sec = "noise";
  reject_unknown(t, sec, {"preset", "t1_us", "t2_us", "readout", "single_qubit_time_ns",
                          "two_qubit_time_ns", "single_qubit_depolarizing", "two_qubit_depolarizing"});
  const std::string preset = get_string(t, sec, "preset", "santiago_like");
  NoiseModel m;
  if (preset == "santiago_like" || preset == "santiago-like") {
    m = NoiseModel::santiago_like();
  } else if (preset == "ideal") {
    m = NoiseModel::ideal();
  } else if (preset == "thermal") {
    m = NoiseModel::ideal();
    m.t1 = {100e-6};
    m.t2 = {100e-6};
  } else {
    throw ConfigError("noise.preset", "unknown preset '" + preset + "'");
  }
  if (auto v = get_list<double>(t, sec, "t1_us"); !v.empty()) m.t1 = scaled<double>(v, 1e-6);
  if (auto v = get_list<double>(t, sec, "t2_us"); !v.empty()) m.t2 = scaled<double>(v, 1e-6);
  if (auto v = get_list<double>(t, sec, "readout"); !v.empty()) {
    m.readout.clear();
    for (double p : v) m.readout.push_back(ReadoutError::symmetric(p));
  }
  m.single_qubit_time = get_double(t, sec, "single_qubit_time_ns", m.single_qubit_time * 1e9) * 1e-9;
  m.two_qubit_time = get_double(t, sec, "two_qubit_time_ns", m.two_qubit_time * 1e9) * 1e-9;
  m.single_qubit_depolarizing = get_double(t, sec, "single_qubit_depolarizing", m.single_qubit_depolarizing);
  m.two_qubit_depolarizing = get_double(t, sec, "two_qubit_depolarizing", m.two_qubit_depolarizing);
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("noise", e.what());
  }
  return m;
}

void parse_zne(const toml::table& t, ExperimentConfig& c) {
  const std::string sec = "zne";
  reject_unknown(t, sec, {"t1_us", "degree", "mode", "t2_ratio", "readout", "min_t1_us", "repetitions",
                          "shots", "theta", "theta_values"});
  ZneConfig& z = c.zne;
  if (t.get("t1_us")) {
    const auto v = get_list<double>(t, sec, "t1_us");
    z.t1_grid = scaled<double>(v, 1e-6);
  }
  z.degree = static_cast<int>(get_int(t, sec, "degree", z.degree));
  const std::string mode = get_string(t, sec, "mode", "least_squares");
  if (mode == "least_squares") {
    z.mode = ZneMode::kLeastSquares;
  } else if (mode == "richardson") {
    z.mode = ZneMode::kRichardson;
  } else {
    throw ConfigError("zne.mode", "expected least_squares or richardson");
  }
  z.t2_ratio = get_double(t, sec, "t2_ratio", z.t2_ratio);
  z.readout = get_double(t, sec, "readout", z.readout);
  z.min_t1 = get_double(t, sec, "min_t1_us", z.min_t1 * 1e6) * 1e-6;
  z.repetitions = static_cast<int>(get_int(t, sec, "repetitions", z.repetitions));
  z.shots = get_int(t, sec, "shots", z.shots);
  c.theta_file = get_string(t, sec, "theta", c.theta_file.string());
  if (t.get("theta_values")) c.theta = get_list<double>(t, sec, "theta_values");
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& origin) {
  toml::table root;
  try {
    root = toml::parse(text, origin.string());
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << e.description() << " (line " << e.source().begin.line << ")";
    throw ConfigError("syntax", os.str());
  }
  reject_unknown(root, "", {"problem", "qubits", "shots", "repetitions", "base_seed", "output", "threads",
                            "trajectories", "reference_cache", "physics", "ansatz", "optimizer",
                            "noise", "zne"});
  ExperimentConfig c;
  try {
    c.problem = Problem::from_name(get_string(root, "", "problem", "harmonic_oscillator"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("problem", e.what());
  }
  if (const auto* t = section_of(root, "physics")) parse_physics(*t, c.problem);
  if (root.get("qubits")) c.qubits = get_list<int>(root, "", "qubits");
  if (root.get("shots")) c.shots = get_list<std::int64_t>(root, "", "shots");
  c.repetitions = static_cast<int>(get_int(root, "", "repetitions", c.repetitions));
  const auto seed = get_int(root, "", "base_seed", 0);
  if (seed < 0) throw ConfigError("base_seed", "must be non-negative");
  c.base_seed = static_cast<std::uint64_t>(seed);
  c.output = get_string(root, "", "output", c.output.string());
  c.threads = static_cast<int>(get_int(root, "", "threads", 0));
  c.write_trajectories = get_bool(root, "", "trajectories", false);
  c.reference_cache = get_string(root, "", "reference_cache", "");
  if (const auto* t = section_of(root, "ansatz")) c.ansatze = parse_ansatz(*t);
  if (const auto* t = section_of(root, "optimizer")) c.optimizers = parse_optimizer(*t);
  if (const auto* t = section_of(root, "noise")) c.noise = parse_noise(*t);
  if (const auto* t = section_of(root, "zne")) parse_zne(*t, c);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace qpde
