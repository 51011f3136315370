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

#include "qpde/validate.hpp"

#include <gtest/gtest.h>

namespace qpde {
namespace {

bool all_pass(const std::vector<CheckResult>& r) {
  for (const auto& c : r)
    if (!c.passed) return false;
  return true;
}

TEST(Validation, CleanBuildPasses) {
  const auto r = run_validation();
  for (const auto& c : r) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_GE(r.size(), 10u);
}

TEST(Validation, InjectedFaultsAreCaught) {
  EXPECT_FALSE(all_pass(run_validation(Fault::kQftSign)));
  EXPECT_FALSE(all_pass(run_validation(Fault::kMomentumOrder)));
  EXPECT_THROW(parse_fault("nope"), std::invalid_argument);
  EXPECT_EQ(parse_fault("qft-sign"), Fault::kQftSign);
}

}  // namespace
}  // namespace qpde
