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
#include "avgsim/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "avgsim/dynamics.hpp"
#include "avgsim/error.hpp"
#include "avgsim/rng.hpp"

namespace avgsim {

namespace {

void RequireNoIsolatedNodes(const ClusteredGraph& g) {
  if (g.m() == 0) throw Error(ErrorKind::kEmptyGraph, "graph has no edges");
  for (int u = 0; u < g.n(); ++u) {
    if (g.degree(u) == 0) {
      throw Error(ErrorKind::kInvalidParams,
                  "node " + std::to_string(u) + " is isolated");
    }
  }
}

}  // namespace

std::vector<double> SignComponentInitialState(int n, std::uint64_t seed,
                                              int j) {
  return InitRandomState(
      n, DeriveSeed(DeriveSeed(seed, Stream::kState),
                    static_cast<std::uint64_t>(j)));
}

SignLabelingResult SignLabelingRun(const ClusteredGraph& g, int T, int ell,
                                   std::uint64_t seed, SignTrace* trace) {
  if (T < 1) throw Error(ErrorKind::kConfig, "T must be >= 1");
  if (ell < 1) throw Error(ErrorKind::kConfig, "ell must be >= 1");
  RequireNoIsolatedNodes(g);
  const int n = g.n();
  const std::size_t cells = static_cast<std::size_t>(n) * ell;

  // Component-major values so one step touches a single contiguous row.
  std::vector<double> x(cells);
  for (int j = 0; j < ell; ++j) {
    const auto init = SignComponentInitialState(n, seed, j);
    std::copy(init.begin(), init.end(),
              x.begin() + static_cast<std::size_t>(j) * n);
  }
  std::vector<std::int32_t> counts(cells, 0);
  std::vector<std::int64_t> component_steps(ell, 0);

  SignLabelingResult r;
  r.n = n;
  r.ell = ell;
  r.labels.assign(cells, 0);
  r.freeze_times.assign(cells, -1);
  r.freeze_component_times.assign(cells, -1);

  Rng edge_rng(DeriveSeed(seed, Stream::kEdges));
  Rng comp_rng(DeriveSeed(seed, Stream::kCopy));
  const auto m = static_cast<std::uint64_t>(g.m());
  const auto& edges = g.edges();
  std::size_t remaining = cells;
  std::int64_t round = 0;
  while (remaining > 0) {
    const auto idx = edge_rng.Below(m);
    const Edge e = edges[idx];
    const int j = ell > 1 ? static_cast<int>(comp_rng.Below(ell)) : 0;
    ++round;
    ++component_steps[j];
    if (trace != nullptr) {
      trace->edge_index.push_back(static_cast<std::int32_t>(idx));
      trace->component.push_back(j);
    }
    double* xj = x.data() + static_cast<std::size_t>(j) * n;
    ApplyStep(xj, e.u, e.v, 0.5);
    for (const int w : {e.u, e.v}) {
      const std::size_t cj = static_cast<std::size_t>(j) * n + w;
      if (++counts[cj] != T) continue;
      const std::size_t out = static_cast<std::size_t>(w) * ell + j;
      r.labels[out] = static_cast<std::int8_t>(SignOf(xj[w]));
      r.freeze_times[out] = round;
      r.freeze_component_times[out] = component_steps[j];
      --remaining;
    }
  }
  r.total_rounds = round;
  return r;
}

SignDefaults SignDefaultParameters(int n, double lambda3, double eps) {
  if (!(lambda3 > 0.0)) {
    throw Error(ErrorKind::kInvalidParams, "lambda3 must be positive");
  }
  if (!(eps > 0.0)) throw Error(ErrorKind::kInvalidParams, "eps must be > 0");
  const double ln_n = std::log(static_cast<double>(n));
  SignDefaults s;
  s.T = static_cast<int>(std::ceil(8.0 / lambda3 * ln_n));
  s.ell = static_cast<int>(std::ceil(10.0 / eps * ln_n));
  return s;
}

void ValidateJumpConfig(const JumpConfig& cfg) {
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw Error(ErrorKind::kConfig, "delta must lie in (0, 1)");
  }
  if (!(cfg.tau_s >= 1 && cfg.tau_s <= cfg.tau_s_max &&
        cfg.tau_s_max < cfg.tau_e && cfg.tau_e <= cfg.tau_e_max)) {
    throw Error(ErrorKind::kConfig,
                "need 1 <= tau_s <= tau_s_max < tau_e <= tau_e_max");
  }
}

JumpConfig JumpDefaultParameters(int n, int d, int b, double lambda2,
                                 double lambda3, double delta) {
  if (b < 1 || d < 1) {
    throw Error(ErrorKind::kInvalidParams, "need b >= 1 and d >= 1");
  }
  const double gap = lambda3 - lambda2;
  if (!(delta > 0.0 && delta < 0.8 * gap)) {
    throw Error(ErrorKind::kDeltaOutOfRange,
                "need 0 < delta < 0.8 (lambda3 - lambda2) = " +
                    std::to_string(0.8 * gap));
  }
  const double eps = delta / gap;
  JumpConfig cfg;
  cfg.delta = delta;
  cfg.tau_s = static_cast<std::int64_t>(
      std::ceil(100.0 * std::log(static_cast<double>(n) * d / (eps * b)) /
                (delta * gap)));
  cfg.tau_s_max = 2 * cfg.tau_s;
  cfg.tau_e = 3 * cfg.tau_s_max +
              static_cast<std::int64_t>(std::ceil(10.0 * d / (delta * b)));
  cfg.tau_e_max = 2 * cfg.tau_e;
  return cfg;
}

JumpConfig JumpDefaultParameters(const ClusteredGraph& g,
                                 const GraphSpectrum& spec, double delta) {
  return JumpDefaultParameters(g.n(), g.d(), g.b(), spec.lambda2(),
                               spec.lambda3(), delta);
}

std::vector<double> JumpCopyInitialState(int n, std::uint64_t seed, int j) {
  return InitRandomState(
      n, DeriveSeed(DeriveSeed(seed, Stream::kState),
                    static_cast<std::uint64_t>(j)));
}

namespace {

// One Jump-Labeling copy. Values are held as mean + c * 2^exp: averaging
// commutes with shifting by a constant, so the conserved mean is dropped and
// the decaying deviation c is kept near unit scale. Without this the signal
// falls below double resolution long before the end times.
class JumpCopy {
 public:
  JumpCopy(int n, const JumpConfig& cfg, std::uint64_t seed, int j)
      : n_(n),
        cfg_(cfg),
        tau_rng_(DeriveSeed(DeriveSeed(seed, Stream::kTau),
                            static_cast<std::uint64_t>(j))),
        c_(JumpCopyInitialState(n, seed, j)),
        tau_(n, 0),
        tau_s_(n, 0),
        tau_e_(n, 0),
        stored_mantissa_(n, 0.0),
        stored_exp_(n, 0),
        label_(n, 0),
        label_time_(n, -1) {
    Recenter();
  }

  // Returns the number of labels set by this activation.
  int Activate(int u, int v, std::int64_t round) {
    ApplyStep(c_.data(), u, v, cfg_.delta);
    int set = Touch(u, round) + Touch(v, round);
    if (++since_recenter_ >= n_) Recenter();
    return set;
  }

  bool done() const { return labeled_ == n_; }
  int label(int u) const { return label_[u]; }
  std::int64_t label_time(int u) const { return label_time_[u]; }
  std::int64_t tau_s(int u) const { return tau_s_[u]; }
  std::int64_t tau_e(int u) const { return tau_e_[u]; }

 private:
  int Touch(int w, std::int64_t round) {
    const std::int64_t t = ++tau_[w];
    if (t == 1) {
      tau_s_[w] = tau_rng_.Between(cfg_.tau_s, cfg_.tau_s_max);
      tau_e_[w] = tau_rng_.Between(cfg_.tau_e, cfg_.tau_e_max);
    }
    if (t == tau_s_[w]) {
      stored_mantissa_[w] = c_[w];
      stored_exp_[w] = exp_;
      return 0;
    }
    if (t == tau_e_[w]) {
      // exp_ never increases, so the stored value is rescaled upward; an
      // overflow to infinity still carries the correct sign.
      const double stored =
          std::ldexp(stored_mantissa_[w], stored_exp_[w] - exp_);
      label_[w] = static_cast<std::int8_t>(SignOf(stored - c_[w]));
      label_time_[w] = round;
      ++labeled_;
      return 1;
    }
    return 0;
  }

  void Recenter() {
    since_recenter_ = 0;
    double sum = 0.0;
    for (double v : c_) sum += v;
    const double mean = sum / n_;
    double peak = 0.0;
    for (double& v : c_) {
      v -= mean;
      peak = std::max(peak, std::abs(v));
    }
    if (peak > 0.0 && peak < 0x1.0p-32) {
      const int k = -std::ilogb(peak);
      for (double& v : c_) v = std::ldexp(v, k);
      exp_ -= k;
    }
  }

  int n_;
  JumpConfig cfg_;
  Rng tau_rng_;
  std::vector<double> c_;
  int exp_ = 0;
  int since_recenter_ = 0;
  int labeled_ = 0;
  std::vector<std::int64_t> tau_;
  std::vector<std::int64_t> tau_s_;
  std::vector<std::int64_t> tau_e_;
  std::vector<double> stored_mantissa_;
  std::vector<int> stored_exp_;
  std::vector<std::int8_t> label_;
  std::vector<std::int64_t> label_time_;
};

}  // namespace

BoostedJumpResult BoostedJumpRun(const ClusteredGraph& g,
                                 const JumpConfig& cfg, int ell,
                                 std::uint64_t seed) {
  ValidateJumpConfig(cfg);
  if (ell < 1 || ell % 2 == 0) {
    throw Error(ErrorKind::kConfig, "ell must be odd and >= 1");
  }
  RequireNoIsolatedNodes(g);
  const int n = g.n();
  std::vector<JumpCopy> copies;
  copies.reserve(ell);
  for (int j = 0; j < ell; ++j) copies.emplace_back(n, cfg, seed, j);

  Rng edge_rng(DeriveSeed(seed, Stream::kEdges));
  Rng copy_rng(DeriveSeed(seed, Stream::kCopy));
  const auto m = static_cast<std::uint64_t>(g.m());
  const auto& edges = g.edges();
  std::int64_t remaining = static_cast<std::int64_t>(n) * ell;
  std::int64_t round = 0;
  while (remaining > 0) {
    const Edge e = edges[edge_rng.Below(m)];
    const int j = ell > 1 ? static_cast<int>(copy_rng.Below(ell)) : 0;
    ++round;
    remaining -= copies[j].Activate(e.u, e.v, round);
  }

  BoostedJumpResult r;
  r.ell = ell;
  r.total_rounds = round;
  r.labels.resize(n);
  r.copy_labels.resize(static_cast<std::size_t>(n) * ell);
  r.label_times.assign(n, 0);
  for (int u = 0; u < n; ++u) {
    int vote = 0;
    for (int j = 0; j < ell; ++j) {
      const int l = copies[j].label(u);
      r.copy_labels[static_cast<std::size_t>(u) * ell + j] =
          static_cast<std::int8_t>(l);
      vote += l;
      r.label_times[u] = std::max(r.label_times[u], copies[j].label_time(u));
    }
    r.labels[u] = static_cast<std::int8_t>(SignOf(vote));
  }
  return r;
}

JumpLabelingResult JumpLabelingRun(const ClusteredGraph& g,
                                   const JumpConfig& cfg, std::uint64_t seed) {
  ValidateJumpConfig(cfg);
  RequireNoIsolatedNodes(g);
  const int n = g.n();
  JumpCopy copy(n, cfg, seed, 0);
  Rng edge_rng(DeriveSeed(seed, Stream::kEdges));
  const auto m = static_cast<std::uint64_t>(g.m());
  const auto& edges = g.edges();
  std::int64_t round = 0;
  while (!copy.done()) {
    const Edge e = edges[edge_rng.Below(m)];
    ++round;
    copy.Activate(e.u, e.v, round);
  }
  JumpLabelingResult r;
  r.total_rounds = round;
  r.labels.resize(n);
  r.label_times.resize(n);
  r.tau_s_u.resize(n);
  r.tau_e_u.resize(n);
  for (int u = 0; u < n; ++u) {
    r.labels[u] = static_cast<std::int8_t>(copy.label(u));
    r.label_times[u] = copy.label_time(u);
    r.tau_s_u[u] = copy.tau_s(u);
    r.tau_e_u[u] = copy.tau_e(u);
  }
  return r;
}

}  // namespace avgsim
