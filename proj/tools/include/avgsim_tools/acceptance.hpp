// Copyright 2026 The avgsim Authors
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
//
#ifndef AVGSIM_TOOLS_ACCEPTANCE_HPP_
#define AVGSIM_TOOLS_ACCEPTANCE_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace avgsim::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  // Human-readable measured values.
  std::string measured;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct SuiteOptions {
  std::uint64_t seed = 0x61766773696DULL;
  int workers = 0;  // 0: WorkerCount()
};

struct CriterionInfo {
  int id;
  const char* name;
  bool quick;
  double budget_seconds;
  CriterionResult (*run)(const SuiteOptions&);
};

const std::vector<CriterionInfo>& Criteria();

// Runs one criterion; exceptions become a failing result.
CriterionResult RunCriterion(const CriterionInfo& info,
                             const SuiteOptions& options);

// One line: "PASS  3 first_moment_oracle  <measured>  (1.2 s / 300 s)".
std::string FormatResult(const CriterionResult& r);

// Runs `ids` (all when empty, or the quick subset), printing each line as it
// completes. Returns true iff every criterion passed.
bool RunSuite(const std::vector<int>& ids, bool quick,
              const SuiteOptions& options, std::ostream& out);

}  // namespace avgsim::acceptance

#endif  // AVGSIM_TOOLS_ACCEPTANCE_HPP_
