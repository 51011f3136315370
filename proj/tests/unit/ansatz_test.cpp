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

#include "qpde/ansatz.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

namespace qpde {
namespace {

struct TableRow {
  int n;
  std::size_t ry_params, ry_cnots, zgr_params, zgr_cnots;
};

// Parameter and CNOT counts of the symmetrized circuits.
constexpr TableRow kRows[] = {
    {2, 2, 1, 1, 1}, {3, 4, 3, 3, 4}, {4, 6, 6, 7, 9}, {5, 8, 10, 15, 18}, {6, 10, 15, 31, 35},
};

TEST(Ansatz, ResourceCountsMatchTables) {
  for (const auto& row : kRows) {
    AnsatzSpec ry{AnsatzFamily::kRY, row.n, 1, true, 0};
    AnsatzSpec zgr{AnsatzFamily::kZGR, row.n, 1, true, 0};
    EXPECT_EQ(parameter_count(ry), row.ry_params) << row.n;
    EXPECT_EQ(cnot_count(ry), row.ry_cnots) << row.n;
    EXPECT_EQ(parameter_count(zgr), row.zgr_params) << row.n;
    EXPECT_EQ(cnot_count(zgr), row.zgr_cnots) << row.n;
  }
}

TEST(Ansatz, CountsAgreeWithBuiltCircuits) {
  std::mt19937_64 rng(1);
  for (int n = 2; n <= 7; ++n) {
    for (auto fam : {AnsatzFamily::kRY, AnsatzFamily::kZGR}) {
      for (int depth = 1; depth <= (fam == AnsatzFamily::kRY ? 3 : 1); ++depth) {
        for (int parity = 0; parity <= 1; ++parity) {
          AnsatzSpec spec{fam, n, depth, true, parity};
          std::vector<double> theta(parameter_count(spec), 0.3);
          const Circuit c = build_ansatz(spec, theta);
          EXPECT_EQ(c.count(GateKind::kCNOT), cnot_count(spec));
          EXPECT_EQ(c.count(GateKind::kRY), parameter_count(spec));
        }
      }
    }
  }
}

TEST(Ansatz, RejectsWrongParameterCount) {
  AnsatzSpec spec{AnsatzFamily::kZGR, 3, 1, true, 0};
  std::vector<double> theta(2);
  EXPECT_THROW(build_ansatz(spec, theta), std::invalid_argument);
  EXPECT_THROW(parse_ansatz_family("xyz"), std::invalid_argument);
}

// Effective rotation angle applied to qubit `level` when qubits 0..level-1
// hold the basis value z and only that level's parameters are non-zero.
double effective_angle(int n, int level, std::size_t z, const std::vector<double>& theta) {
  const std::size_t index = z << (n - level);
  const auto s = run_circuit(zgr_ansatz(n, theta), QuantumState::basis(n, index));
  const std::size_t one = index | (std::size_t{1} << (n - 1 - level));
  return 2 * std::atan2(s[one].real(), s[index].real());
}

TEST(Zgr, EachLevelIsAnInvertibleUniformlyControlledRotation) {
  const int n = 4;
  for (int level = 0; level < n; ++level) {
    const std::size_t width = std::size_t{1} << level, offset = width - 1;
    // S[z][j] = d theta_z / d alpha_j must be a +-1 matrix with S S^T = width I.
    std::vector<std::vector<double>> sm(width, std::vector<double>(width));
    for (std::size_t j = 0; j < width; ++j) {
      std::vector<double> theta((std::size_t{1} << n) - 1, 0.0);
      theta[offset + j] = 0.1;
      for (std::size_t z = 0; z < width; ++z) sm[z][j] = effective_angle(n, level, z, theta) / 0.1;
    }
    for (std::size_t a = 0; a < width; ++a) {
      for (std::size_t b = 0; b < width; ++b) {
        double dot = 0;
        for (std::size_t j = 0; j < width; ++j) dot += sm[a][j] * sm[b][j];
        EXPECT_NEAR(dot, a == b ? static_cast<double>(width) : 0.0, 1e-10) << level;
      }
    }
  }
}

TEST(Zgr, ReachesAnyNonNegativeState) {
  // Target tree angles 2 acos sqrt(p_left / p_node), mapped to circuit
  // parameters through the measured level matrices.
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int n = 1; n <= 5; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> p(dim);
    double total = 0;
    for (auto& v : p) total += (v = u(rng));
    for (auto& v : p) v /= total;
    std::vector<double> theta(dim - 1, 0.0);
    for (int level = 0; level < n; ++level) {
      const std::size_t width = std::size_t{1} << level, block = dim >> level, offset = width - 1;
      std::vector<double> target(width);
      for (std::size_t z = 0; z < width; ++z) {
        double node = 0, left = 0;
        for (std::size_t i = 0; i < block; ++i) node += p[z * block + i];
        for (std::size_t i = 0; i < block / 2; ++i) left += p[z * block + i];
        target[z] = 2 * std::acos(std::sqrt(left / node));
      }
      for (std::size_t j = 0; j < width; ++j) {
        std::vector<double> probe(dim - 1, 0.0);
        probe[offset + j] = 0.1;
        double acc = 0;
        for (std::size_t z = 0; z < width; ++z) acc += effective_angle(n, level, z, probe) / 0.1 * target[z];
        theta[offset + j] = acc / static_cast<double>(width);
      }
    }
    const auto s = run_circuit(zgr_ansatz(n, theta), QuantumState(n));
    for (std::size_t i = 0; i < dim; ++i) EXPECT_NEAR(s[i].real(), std::sqrt(p[i]), 1e-12) << n;
  }
}

TEST(RyAnsatz, MatchesBruteForceLayers) {
  const int n = 3, depth = 2;
  std::vector<double> theta{0.1, -0.4, 0.9, 1.3, 0.2, -0.7, 0.5, 0.05, -1.1};
  oracle::Vec psi(8);
  psi[0] = 1;
  for (int q = 0; q < n; ++q) oracle::apply_ry(psi, n, q, theta[q]);
  for (int d = 1; d <= depth; ++d) {
    for (int c = 0; c < n; ++c)
      for (int t = c + 1; t < n; ++t) oracle::apply_cnot(psi, n, c, t);
    for (int q = 0; q < n; ++q) oracle::apply_ry(psi, n, q, theta[d * n + q]);
  }
  const auto s = run_circuit(ry_ansatz(n, depth, theta), QuantumState(n));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(s[i] - psi[i]), 0.0, 1e-14);
}

TEST(Symmetrize, ProducesRealStatesOfDefiniteParity) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int n = 2; n <= 6; ++n) {
    for (auto fam : {AnsatzFamily::kRY, AnsatzFamily::kZGR}) {
      for (int parity = 0; parity <= 1; ++parity) {
        AnsatzSpec spec{fam, n, 1, true, parity};
        std::vector<double> theta(parameter_count(spec));
        for (auto& t : theta) t = u(rng);
        const auto s = run_circuit(build_ansatz(spec, theta), QuantumState(n));
        const std::size_t dim = s.dim();
        const double sign = parity == 0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < dim; ++i) {
          EXPECT_NEAR(s[i].imag(), 0.0, 1e-14);
          EXPECT_NEAR(s[dim - 1 - i].real(), sign * s[i].real(), 1e-12);
        }
        EXPECT_NEAR(s.norm(), 1.0, 1e-12);
      }
    }
  }
}

TEST(Symmetrize, UpperHalfEncodesInnerState) {
  std::vector<double> theta{0.4, 1.0, -0.3};
  const auto inner = run_circuit(zgr_ansatz(2, theta), QuantumState(2));
  AnsatzSpec spec{AnsatzFamily::kZGR, 3, 1, true, 0};
  const auto s = run_circuit(build_ansatz(spec, theta), QuantumState(3));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(s[4 + i].real()), std::abs(inner[i].real()) / std::sqrt(2.0), 1e-14);
  }
}

}  // namespace
}  // namespace qpde
