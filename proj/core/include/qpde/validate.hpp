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
#include <string>
#include <vector>

namespace qpde {

/// Deliberate bugs for checking that the suite catches them.
enum class Fault {
  kNone,
  kQftSign,        ///< controlled phases of the QFT with the wrong sign
  kMomentumOrder,  ///< momenta taken as s dp for every s (no negative half)
};

/// Accepts "none", "qft-sign", "momentum-order".
Fault parse_fault(const std::string& name);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Invariant suite: QFT unitary, interpolation equivalence, momentum
/// ordering, Nyquist exactness, symmetrization, Plancherel, parameter-shift
/// gradients, channel sanity and spectral convergence rates.
std::vector<CheckResult> run_validation(Fault fault = Fault::kNone, std::uint64_t seed = 7);

}  // namespace qpde
