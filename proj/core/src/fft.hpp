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

#include "qpde/qsim.hpp"

namespace qpde::detail {

/// Unitary DFT, out_k = N^{-1/2} sum_j exp(sign * 2 pi i j k / N) in_j.
/// sign = +1 matches the QFT convention; sign = -1 is its inverse.
Amplitudes unitary_dft(std::span<const Complex> in, int sign);

}  // namespace qpde::detail
