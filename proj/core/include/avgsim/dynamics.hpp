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
#ifndef AVGSIM_DYNAMICS_HPP_
#define AVGSIM_DYNAMICS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "avgsim/graph.hpp"
#include "avgsim/rng.hpp"

namespace avgsim {

using StateVector = std::vector<double>;

// Independent uniform +-1 coordinates.
StateVector InitRandomState(int n, std::uint64_t seed);
void FillRandomState(Rng& rng, StateVector& x);

// x_u' = (1 - delta) x_u + delta x_v and symmetrically for v.
inline void ApplyStep(double* x, int u, int v, double delta) {
  const double xu = x[u];
  const double xv = x[v];
  x[u] = xu + delta * (xv - xu);
  x[v] = xv + delta * (xu - xv);
}

// Checked functional form. Throws InvalidEdge on u == v or bad ids.
StateVector Step(const StateVector& x, Edge e, double delta);

struct Decomposition {
  double a_par = 0.0;
  double a_y = 0.0;
  std::vector<double> z;
  double y_norm_sq = 0.0;
  double z_norm_sq = 0.0;
};

// x = a_par 1/sqrt(n) + a_y chi/sqrt(n) + z, chi balanced.
Decomposition Decompose(const StateVector& x, const std::vector<int>& chi);

// Scalars only; avoids materializing z.
struct Projection {
  double a_par = 0.0;
  double a_y = 0.0;
  double y_norm_sq = 0.0;
  double z_norm_sq = 0.0;
};
Projection Project(const double* x, const std::vector<int>& chi);

// Uniform edge stream with per-node local activation counters. Protocol code
// only ever sees the returned edges; global time is analysis-side.
class ActivationSchedule {
 public:
  ActivationSchedule(const ClusteredGraph& g, std::uint64_t seed,
                     bool history = false);

  Edge Next();

  std::int64_t step() const { return step_; }
  std::int64_t local_count(int u) const { return local_counts_[u]; }
  const std::vector<std::int64_t>& local_counts() const {
    return local_counts_;
  }
  std::int64_t cross_count() const { return cross_count_; }
  bool history() const { return history_; }

  // T_u(tau): first round with at least tau activations of u; T_u(0) = 0.
  // Throws NotYetReached, or InvalidParams when history is off.
  std::int64_t LocalToGlobal(int u, std::int64_t tau) const;

 private:
  const ClusteredGraph* g_;
  Rng rng_;
  bool history_;
  std::int64_t step_ = 0;
  std::int64_t cross_count_ = 0;
  std::vector<std::int64_t> local_counts_;
  std::vector<std::vector<std::int64_t>> times_;
};

struct Observation {
  std::int64_t t = 0;
  double a_par = 0.0;
  double a_y = 0.0;
  double y_norm_sq = 0.0;
  double z_norm_sq = 0.0;
  // -1 when the matching observer is disabled.
  std::int64_t bad_count = -1;
  std::int64_t r_eta_count = -1;
  std::int64_t r_eta_bar_count = -1;
  std::int64_t cross_count = 0;
  // ||W_t ... W_1 chi - chi||^2 when chi is co-evolved, else NaN.
  double chi_drift_sq = 0.0;
};

struct RunOptions {
  double delta = 0.5;
  std::int64_t rounds = 0;
  std::uint64_t seed = 0;
  std::int64_t observe_every = 1;
  std::optional<double> eps;
  std::optional<double> eta;
  // Co-evolve chi under the same edges to check the cross-edge bound.
  bool track_chi = false;
  bool history = false;
  // Start from this state instead of a seeded random one.
  std::optional<StateVector> x0;
};

struct RunResult {
  std::vector<Observation> series;
  StateVector x0;
  StateVector x_final;
  std::int64_t cross_count = 0;
  std::vector<std::int64_t> local_counts;
  // Worst (chi_drift_sq - bound) over observations; <= 0 when the cross-edge
  // bound held everywhere. Only meaningful with track_chi.
  double chi_claim_worst_excess = 0.0;
};

// Bound on ||W_t ... W_1 chi - chi||^2 after c cross activations.
double CrossEdgeBound(std::int64_t c, double delta);

RunResult Run(const ClusteredGraph& g, const RunOptions& options);

}  // namespace avgsim

#endif  // AVGSIM_DYNAMICS_HPP_
