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

#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace qpde::detail {

namespace {

// FFTW planning is not thread-safe; execution with new-array execute is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> plans;
  std::lock_guard lock(planner_mutex());
  auto key = std::make_pair(n, sign);
  if (auto it = plans.find(key); it != plans.end()) return it->second;
  // Unaligned scratch buffers so the plan is valid for any std::complex storage.
  auto* in = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n + 16));
  auto* out = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n + 16));
  auto* in_u = reinterpret_cast<fftw_complex*>(reinterpret_cast<char*>(in) + 8);
  auto* out_u = reinterpret_cast<fftw_complex*>(reinterpret_cast<char*>(out) + 8);
  fftw_plan p = fftw_plan_dft_1d(n, in_u, out_u, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(in);
  fftw_free(out);
  if (p == nullptr) throw std::runtime_error("FFTW planning failed");
  plans.emplace(key, p);
  return p;
}

}  // namespace

Amplitudes unitary_dft(std::span<const Complex> in, int sign) {
  const int n = static_cast<int>(in.size());
  if (n == 0) return {};
  Amplitudes src(in.begin(), in.end());
  Amplitudes out(in.size());
  fftw_execute_dft(plan_for(n, sign), reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace qpde::detail
