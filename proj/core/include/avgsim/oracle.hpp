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
#ifndef AVGSIM_ORACLE_HPP_
#define AVGSIM_ORACLE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "avgsim/dynamics.hpp"
#include "avgsim/graph.hpp"
#include "avgsim/spectral.hpp"

namespace avgsim {

// y <- Wbar y with Wbar = I - (delta/m) L.
void ExpectedStep(const ClusteredGraph& g, double delta, StateVector& y);

// Wbar^t x0 by t sparse mat-vecs.
StateVector ExpectedState(const ClusteredGraph& g, const StateVector& x0,
                          std::int64_t t, double delta);

struct OneStepExpectation {
  double ey2 = 0.0;
  double ez2 = 0.0;
  double eyz2 = 0.0;
};

// Averages ||y'||^2, ||z'||^2, ||y' + z'||^2 over all m edges exactly.
OneStepExpectation OneStepExpectationExact(const ClusteredGraph& g,
                                           const StateVector& x, double delta);

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  // Positive when the inequality holds with room to spare.
  double slack = 0.0;
};

// The three general-delta bounds evaluated at `delta` and the four
// delta = 1/2 bounds. lambda3 is the smallest normalized-Laplacian eigenvalue
// on the space orthogonal to 1 and chi.
std::vector<InequalityCheck> OneStepInequalities(const ClusteredGraph& g,
                                                 const StateVector& x,
                                                 double delta, double lambda3);

struct FirstMomentDecomposition {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double wbar2 = 0.0;
  double wbar3 = 0.0;
  double x0_norm = 0.0;

  double e_norm_bound(std::int64_t t) const;
};

FirstMomentDecomposition ComputeFirstMomentDecomposition(
    const ClusteredGraph& g, const GraphSpectrum& spec, const StateVector& x0);

// alpha1 1 + alpha2 wbar2^t (chi - sqrt(n) f_perp).
StateVector FirstMomentLeadingTerms(const GraphSpectrum& spec,
                                    const FirstMomentDecomposition& fmd,
                                    const std::vector<int>& chi,
                                    std::int64_t t);

struct FirstMomentResidual {
  std::int64_t t = 0;
  double e_norm = 0.0;
  double bound = 0.0;
  bool holds = false;
};

// Compares the leading terms against ExpectedState at delta = 1/2.
std::vector<FirstMomentResidual> FirstMomentResiduals(
    const ClusteredGraph& g, const GraphSpectrum& spec, const StateVector& x0,
    const std::vector<std::int64_t>& times);

struct SignWindows {
  std::int64_t t_mono = 0;
  bool window_empty = true;
  // Unbounded above (alpha1 = 0); t_hi is then capped at n^2.
  bool open_ended = false;
  double t_lo = 0.0;
  double t_hi = 0.0;
};

SignWindows MonotonicityAndSignWindows(const GraphSpectrum& spec,
                                       double alpha1, double alpha2,
                                       double eps);

struct SignPropertyReport {
  std::int64_t checked = 0;
  std::int64_t monotonicity_failures = 0;
  std::int64_t sign_failures = 0;
};

// For every non-bad node and every t in `mono_times` (resp. `sign_times`)
// compares the sign of E[x^(t-1)] - E[x^(t)] (resp. E[x^(t)]) with
// sgn(alpha2 chi_u).
SignPropertyReport VerifySignProperties(
    const ClusteredGraph& g, const GraphSpectrum& spec, const StateVector& x0,
    double eps, const std::vector<std::int64_t>& mono_times,
    const std::vector<std::int64_t>& sign_times);

// (1 - 4 delta b/(d n))^t a_y0.
double MuExpected(double a_y0, std::int64_t t, double delta, int b, int d,
                  int n);

struct RecursionEnvelope {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;
  double xi = 0.0;
  double xi1 = 0.0;
  double xi2 = 0.0;
  double eps = 0.0;
  double beta = 0.0;
  double kappa = 0.0;
  // (y_hat_t, z_hat_t) for t = 0..t_max.
  std::vector<double> y_hat;
  std::vector<double> z_hat;
  // Closed-form bounds on the same grid.
  std::vector<double> y_closed;
  std::vector<double> z_closed;
  // The closed bounds are derived for delta < 0.8 (lambda3 - lambda2) at
  // large n; this records whether the iterates stayed below them.
  bool closed_bounds_hold = true;

  double mu(std::int64_t t, double a_y0) const;
};

RecursionEnvelope ComputeRecursionEnvelope(double y0_sq, double z0_sq,
                                           double delta, int b, int d,
                                           double lambda3, int n,
                                           std::int64_t t_max);

// 3 lambda2 t / n.
// z_hat_t / y_hat_t at ascending `times`. The pair is renormalized every step
// so horizons far past the underflow of y_hat stay finite.
std::vector<double> EnvelopeRatio(double y0_sq, double z0_sq, double delta,
                                  int b, int d, double lambda3, int n,
                                  const std::vector<std::int64_t>& times);

// Concentration window with unit constants:
// [(n / (delta g)) ln(n / delta), (n^2 / (delta g)) (d g / (delta b))^(2/3)],
// g = lambda3 - lambda2; the ratio target is sqrt(delta b / (d g)).
struct ConcentrationWindow {
  double lo = 0.0;
  double hi = 0.0;
  double ratio_target = 0.0;
};
ConcentrationWindow ConcentrationWindowFor(int n, int d, int b, double lambda2,
                                           double lambda3, double delta);

double MomBoundRhs(double lambda2, std::int64_t t, int n);

struct MomWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return lo > hi; }
};
// [(3n/lambda3) ln n, n/(4 lambda2)].
MomWindow MomBoundWindow(double lambda2, double lambda3, int n);

}  // namespace avgsim

#endif  // AVGSIM_ORACLE_HPP_
