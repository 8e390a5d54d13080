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
#ifndef AVGSIM_PROTOCOLS_HPP_
#define AVGSIM_PROTOCOLS_HPP_

#include <cstdint>
#include <vector>

#include "avgsim/graph.hpp"
#include "avgsim/spectral.hpp"

namespace avgsim {

// sgn with sgn(0) = +1.
inline int SignOf(double v) { return v >= 0.0 ? 1 : -1; }

// Records, per round, which edge fired and which component it drove.
struct SignTrace {
  std::vector<std::int32_t> edge_index;
  std::vector<std::int32_t> component;
};

// Matrices are node-major: entry (u, j) lives at u * ell + j.
struct SignLabelingResult {
  int n = 0;
  int ell = 0;
  std::vector<std::int8_t> labels;
  // Global round of each freeze.
  std::vector<std::int64_t> freeze_times;
  // Rounds of component j elapsed at the freeze.
  std::vector<std::int64_t> freeze_component_times;
  std::int64_t total_rounds = 0;

  int label(int u, int j) const {
    return labels[static_cast<std::size_t>(u) * ell + j];
  }
};

SignLabelingResult SignLabelingRun(const ClusteredGraph& g, int T, int ell,
                                   std::uint64_t seed,
                                   SignTrace* trace = nullptr);

// Initial +-1 vector of component j, as used by SignLabelingRun.
std::vector<double> SignComponentInitialState(int n, std::uint64_t seed,
                                              int j);

struct SignDefaults {
  int T = 0;
  int ell = 0;
};

// T = ceil((8/lambda3) ln n), ell = ceil(10 ln n / eps).
SignDefaults SignDefaultParameters(int n, double lambda3, double eps);

struct JumpConfig {
  double delta = 0.5;
  std::int64_t tau_s = 1;
  std::int64_t tau_s_max = 1;
  std::int64_t tau_e = 2;
  std::int64_t tau_e_max = 2;
};

// Throws ConfigError unless delta in (0,1) and
// 1 <= tau_s <= tau_s_max < tau_e <= tau_e_max.
void ValidateJumpConfig(const JumpConfig& cfg);

// Requires 0 < delta < 0.8 (lambda3 - lambda2); throws DeltaOutOfRange.
JumpConfig JumpDefaultParameters(int n, int d, int b, double lambda2,
                                 double lambda3, double delta);
JumpConfig JumpDefaultParameters(const ClusteredGraph& g,
                                 const GraphSpectrum& spec, double delta);

struct JumpLabelingResult {
  std::vector<std::int8_t> labels;
  std::vector<std::int64_t> label_times;
  std::vector<std::int64_t> tau_s_u;
  std::vector<std::int64_t> tau_e_u;
  std::int64_t total_rounds = 0;
};

JumpLabelingResult JumpLabelingRun(const ClusteredGraph& g,
                                   const JumpConfig& cfg, std::uint64_t seed);

struct BoostedJumpResult {
  int ell = 0;
  std::vector<std::int8_t> labels;
  // Node-major n x ell per-copy labels.
  std::vector<std::int8_t> copy_labels;
  // Round at which the node's last copy label was set.
  std::vector<std::int64_t> label_times;
  std::int64_t total_rounds = 0;
};

// ell interleaved copies on one activation stream; each activation advances
// a uniformly chosen copy. ell must be odd.
BoostedJumpResult BoostedJumpRun(const ClusteredGraph& g,
                                 const JumpConfig& cfg, int ell,
                                 std::uint64_t seed);

// Initial +-1 vector of copy j, as used by the Jump-Labeling engines.
std::vector<double> JumpCopyInitialState(int n, std::uint64_t seed, int j);

}  // namespace avgsim

#endif  // AVGSIM_PROTOCOLS_HPP_
