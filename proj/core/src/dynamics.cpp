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
#include "avgsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "avgsim/error.hpp"

namespace avgsim {

void FillRandomState(Rng& rng, StateVector& x) {
  for (double& v : x) v = rng.Sign();
}

StateVector InitRandomState(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::kInvalidParams, "n must be positive");
  Rng rng(seed);
  StateVector x(n);
  FillRandomState(rng, x);
  return x;
}

StateVector Step(const StateVector& x, Edge e, double delta) {
  const int n = static_cast<int>(x.size());
  if (e.u == e.v) throw Error(ErrorKind::kInvalidEdge, "u == v");
  if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
    throw Error(ErrorKind::kInvalidEdge, "node id out of range");
  }
  StateVector out = x;
  ApplyStep(out.data(), e.u, e.v, delta);
  return out;
}

Projection Project(const double* x, const std::vector<int>& chi) {
  const int n = static_cast<int>(chi.size());
  double sum = 0.0;
  double sum_chi = 0.0;
  double sq = 0.0;
  for (int u = 0; u < n; ++u) {
    sum += x[u];
    sum_chi += chi[u] * x[u];
  }
  const double rn = std::sqrt(static_cast<double>(n));
  Projection p;
  p.a_par = sum / rn;
  p.a_y = sum_chi / rn;
  // z is formed explicitly so its norm carries no cancellation error.
  const double mean = sum / n;
  const double ymean = sum_chi / n;
  for (int u = 0; u < n; ++u) {
    const double z = x[u] - mean - ymean * chi[u];
    sq += z * z;
  }
  p.y_norm_sq = p.a_y * p.a_y;
  p.z_norm_sq = sq;
  return p;
}

Decomposition Decompose(const StateVector& x, const std::vector<int>& chi) {
  const int n = static_cast<int>(chi.size());
  const Projection p = Project(x.data(), chi);
  Decomposition d;
  d.a_par = p.a_par;
  d.a_y = p.a_y;
  d.y_norm_sq = p.y_norm_sq;
  d.z_norm_sq = p.z_norm_sq;
  d.z.resize(n);
  const double rn = std::sqrt(static_cast<double>(n));
  for (int u = 0; u < n; ++u) {
    d.z[u] = x[u] - p.a_par / rn - p.a_y * chi[u] / rn;
  }
  return d;
}

ActivationSchedule::ActivationSchedule(const ClusteredGraph& g,
                                       std::uint64_t seed, bool history)
    : g_(&g), rng_(seed), history_(history), local_counts_(g.n(), 0) {
  if (g.m() == 0) throw Error(ErrorKind::kEmptyGraph, "graph has no edges");
  if (history_) times_.resize(g.n());
}

Edge ActivationSchedule::Next() {
  const Edge e = g_->edges()[rng_.Below(static_cast<std::uint64_t>(g_->m()))];
  ++step_;
  ++local_counts_[e.u];
  ++local_counts_[e.v];
  if (g_->is_cross(e)) ++cross_count_;
  if (history_) {
    times_[e.u].push_back(step_);
    times_[e.v].push_back(step_);
  }
  return e;
}

std::int64_t ActivationSchedule::LocalToGlobal(int u, std::int64_t tau) const {
  if (tau <= 0) return 0;
  if (!history_) {
    throw Error(ErrorKind::kInvalidParams, "schedule has no history");
  }
  const auto& t = times_.at(u);
  if (tau > static_cast<std::int64_t>(t.size())) {
    throw Error(ErrorKind::kNotYetReached,
                "node " + std::to_string(u) + " has only " +
                    std::to_string(t.size()) + " activations");
  }
  return t[tau - 1];
}

double CrossEdgeBound(std::int64_t c, double delta) {
  return static_cast<double>(c) * std::max(4.0, 8.0 * delta);
}

namespace {

struct Observer {
  const ClusteredGraph& g;
  const RunOptions& opt;
  double a_par0 = 0.0;
  double a_y0 = 0.0;

  Observation Observe(std::int64_t t, const StateVector& x,
                      const StateVector* chi_state,
                      std::int64_t cross) const {
    const int n = g.n();
    const Projection p = Project(x.data(), g.chi());
    Observation o;
    o.t = t;
    o.a_par = p.a_par;
    o.a_y = p.a_y;
    o.y_norm_sq = p.y_norm_sq;
    o.z_norm_sq = p.z_norm_sq;
    o.cross_count = cross;
    const double rn = std::sqrt(static_cast<double>(n));
    if (opt.eps) {
      const double limit = (*opt.eps) * (*opt.eps) * a_y0 * a_y0 / n;
      std::int64_t bad = 0;
      for (int u = 0; u < n; ++u) {
        const double ref = a_par0 / rn + a_y0 * g.chi()[u] / rn;
        const double dev = x[u] - ref;
        if (dev * dev > limit) ++bad;
      }
      o.bad_count = bad;
    }
    if (opt.eta) {
      std::int64_t inside = 0;
      for (int u = 0; u < n; ++u) {
        if (g.chi()[u] * (x[u] - a_par0 / rn) >= *opt.eta) ++inside;
      }
      o.r_eta_count = inside;
      o.r_eta_bar_count = n - inside;
    }
    if (chi_state != nullptr) {
      double s = 0.0;
      for (int u = 0; u < n; ++u) {
        const double diff = (*chi_state)[u] - g.chi()[u];
        s += diff * diff;
      }
      o.chi_drift_sq = s;
    } else {
      o.chi_drift_sq = std::numeric_limits<double>::quiet_NaN();
    }
    return o;
  }
};

}  // namespace

RunResult Run(const ClusteredGraph& g, const RunOptions& options) {
  if (options.rounds < 0) {
    throw Error(ErrorKind::kInvalidParams, "rounds must be >= 0");
  }
  if (!(options.delta > 0.0 && options.delta < 1.0)) {
    throw Error(ErrorKind::kInvalidParams, "delta must lie in (0, 1)");
  }
  const int n = g.n();
  RunResult result;
  if (options.x0) {
    if (static_cast<int>(options.x0->size()) != n) {
      throw Error(ErrorKind::kInvalidParams, "x0 length differs from n");
    }
    result.x0 = *options.x0;
  } else {
    result.x0 = InitRandomState(n, DeriveSeed(options.seed, Stream::kState));
  }
  StateVector x = result.x0;
  StateVector chi_state;
  if (options.track_chi) chi_state.assign(g.chi().begin(), g.chi().end());

  Observer obs{g, options};
  const Projection p0 = Project(x.data(), g.chi());
  obs.a_par0 = p0.a_par;
  obs.a_y0 = p0.a_y;

  ActivationSchedule schedule(g, DeriveSeed(options.seed, Stream::kEdges),
                              options.history);
  auto record = [&](std::int64_t t) {
    Observation o = obs.Observe(t, x, options.track_chi ? &chi_state : nullptr,
                                schedule.cross_count());
    if (options.track_chi) {
      const double excess =
          o.chi_drift_sq - CrossEdgeBound(o.cross_count, options.delta);
      result.chi_claim_worst_excess =
          result.series.empty() ? excess
                                : std::max(result.chi_claim_worst_excess,
                                           excess);
    }
    result.series.push_back(o);
  };

  record(0);
  for (std::int64_t t = 1; t <= options.rounds; ++t) {
    const Edge e = schedule.Next();
    ApplyStep(x.data(), e.u, e.v, options.delta);
    if (options.track_chi) ApplyStep(chi_state.data(), e.u, e.v, options.delta);
    const bool due = options.observe_every > 0 && t % options.observe_every == 0;
    if (due || t == options.rounds) record(t);
  }
  result.x_final = std::move(x);
  result.cross_count = schedule.cross_count();
  result.local_counts = schedule.local_counts();
  return result;
}

}  // namespace avgsim
