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
#include "avgsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "avgsim/error.hpp"

namespace avgsim {

void ExpectedStep(const ClusteredGraph& g, double delta, StateVector& y) {
  thread_local std::vector<double> ly;
  ly.assign(y.size(), 0.0);
  for (const Edge& e : g.edges()) {
    const double diff = y[e.u] - y[e.v];
    ly[e.u] += diff;
    ly[e.v] -= diff;
  }
  const double scale = delta / static_cast<double>(g.m());
  for (std::size_t u = 0; u < y.size(); ++u) y[u] -= scale * ly[u];
}

StateVector ExpectedState(const ClusteredGraph& g, const StateVector& x0,
                          std::int64_t t, double delta) {
  if (t < 0) throw Error(ErrorKind::kInvalidParams, "t must be >= 0");
  StateVector y = x0;
  for (std::int64_t s = 0; s < t; ++s) ExpectedStep(g, delta, y);
  return y;
}

OneStepExpectation OneStepExpectationExact(const ClusteredGraph& g,
                                           const StateVector& x,
                                           double delta) {
  OneStepExpectation r;
  StateVector work = x;
  const double w = 1.0 / static_cast<double>(g.m());
  for (const Edge& e : g.edges()) {
    work[e.u] = x[e.u];
    work[e.v] = x[e.v];
    ApplyStep(work.data(), e.u, e.v, delta);
    const Projection p = Project(work.data(), g.chi());
    r.ey2 += w * p.y_norm_sq;
    r.ez2 += w * p.z_norm_sq;
    r.eyz2 += w * (p.y_norm_sq + p.z_norm_sq);
    work[e.u] = x[e.u];
    work[e.v] = x[e.v];
  }
  return r;
}

std::vector<InequalityCheck> OneStepInequalities(const ClusteredGraph& g,
                                                 const StateVector& x,
                                                 double delta,
                                                 double lambda3) {
  const double n = g.n();
  const double b = g.b();
  const double d = g.d();
  const double l2 = 2.0 * b / d;
  const Projection p = Project(x.data(), g.chi());
  const double y = p.y_norm_sq;
  const double z = p.z_norm_sq;

  const double a11 = 1.0 - 8.0 * delta * b / (d * n) +
                     16.0 * delta * delta * b / (d * n * n);
  const double a12 = 16.0 * delta * delta * b / (d * n * n);
  const double a21 = 8.0 * delta * delta * b / (d * n);
  const double a22 = 1.0 - 4.0 * delta * (1.0 - delta) * lambda3 / n;

  const OneStepExpectation gen = OneStepExpectationExact(g, x, delta);
  const OneStepExpectation half = OneStepExpectationExact(g, x, 0.5);

  std::vector<InequalityCheck> out;
  auto upper = [&out](const char* name, double lhs, double rhs) {
    out.push_back({name, lhs, rhs, rhs - lhs});
  };
  auto lower = [&out](const char* name, double lhs, double rhs) {
    out.push_back({name, lhs, rhs, lhs - rhs});
  };
  upper("y_upper_general", gen.ey2, a11 * y + a12 * z);
  lower("y_lower_general", gen.ey2, a11 * y);
  upper("z_upper_general", gen.ez2, a21 * y + a22 * z);
  upper("yz_upper_half", half.eyz2,
        (1.0 - l2 / n) * y + (1.0 - lambda3 / n) * z);
  lower("y_lower_half", half.ey2, (1.0 - 2.0 * l2 / n) * y);
  upper("y_upper_half", half.ey2,
        (1.0 - 2.0 * l2 / n) * y + (2.0 * l2 / (n * n)) * (y + z));
  upper("z_upper_half", half.ez2, (l2 / n) * y + (1.0 - lambda3 / n) * z);
  return out;
}

double FirstMomentDecomposition::e_norm_bound(std::int64_t t) const {
  return std::pow(wbar3, static_cast<double>(t)) * x0_norm;
}

FirstMomentDecomposition ComputeFirstMomentDecomposition(
    const ClusteredGraph& g, const GraphSpectrum& spec, const StateVector& x0) {
  if (spec.wbar2() - spec.wbar3() <= spec.eig_tolerance) {
    throw Error(ErrorKind::kDegenerateGap,
                "second eigenspace of Wbar is not isolated");
  }
  const int n = g.n();
  FirstMomentDecomposition r;
  double s1 = 0.0;
  double s2 = 0.0;
  double dot_perp = 0.0;
  double sq = 0.0;
  for (int u = 0; u < n; ++u) {
    (g.chi()[u] > 0 ? s1 : s2) += x0[u];
    dot_perp += x0[u] * spec.f_perp[u];
    sq += x0[u] * x0[u];
  }
  r.mu1 = 2.0 * s1 / n;
  r.mu2 = 2.0 * s2 / n;
  r.alpha1 = 0.5 * (r.mu1 + r.mu2);
  double f_par_sq = 0.0;
  for (int u = 0; u < n; ++u) {
    const double v = spec.f[u] - spec.f_perp[u];
    f_par_sq += v * v;
  }
  r.alpha2 = (0.5 * (r.mu1 - r.mu2) -
              dot_perp / std::sqrt(static_cast<double>(n))) /
             f_par_sq;
  r.wbar2 = spec.wbar2();
  r.wbar3 = spec.wbar3();
  r.x0_norm = std::sqrt(sq);
  return r;
}

StateVector FirstMomentLeadingTerms(const GraphSpectrum& spec,
                                    const FirstMomentDecomposition& fmd,
                                    const std::vector<int>& chi,
                                    std::int64_t t) {
  const int n = static_cast<int>(chi.size());
  const double rn = std::sqrt(static_cast<double>(n));
  const double decay = fmd.alpha2 * std::pow(fmd.wbar2, static_cast<double>(t));
  StateVector out(n);
  for (int u = 0; u < n; ++u) {
    out[u] = fmd.alpha1 + decay * (chi[u] - rn * spec.f_perp[u]);
  }
  return out;
}

std::vector<FirstMomentResidual> FirstMomentResiduals(
    const ClusteredGraph& g, const GraphSpectrum& spec, const StateVector& x0,
    const std::vector<std::int64_t>& times) {
  const FirstMomentDecomposition fmd =
      ComputeFirstMomentDecomposition(g, spec, x0);
  std::vector<std::int64_t> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  std::vector<FirstMomentResidual> out;
  StateVector ex = x0;
  std::int64_t now = 0;
  for (std::int64_t t : sorted) {
    for (; now < t; ++now) ExpectedStep(g, 0.5, ex);
    const StateVector lead = FirstMomentLeadingTerms(spec, fmd, g.chi(), t);
    double e2 = 0.0;
    for (std::size_t u = 0; u < ex.size(); ++u) {
      const double e = ex[u] - lead[u];
      e2 += e * e;
    }
    FirstMomentResidual r;
    r.t = t;
    r.e_norm = std::sqrt(e2);
    r.bound = fmd.e_norm_bound(t);
    r.holds = r.e_norm <= r.bound + 1e-10 * fmd.x0_norm;
    out.push_back(r);
  }
  return out;
}

SignWindows MonotonicityAndSignWindows(const GraphSpectrum& spec,
                                       double alpha1, double alpha2,
                                       double eps) {
  const double w2 = spec.wbar2();
  const double w3 = spec.wbar3();
  if (w2 - w3 <= spec.eig_tolerance) {
    throw Error(ErrorKind::kDegenerateGap, "wbar2 equals wbar3");
  }
  if (alpha2 == 0.0) throw Error(ErrorKind::kZeroAlpha2, "alpha2 is zero");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::kInvalidParams, "eps must lie in (0, 1)");
  }
  const double n = spec.n;
  SignWindows w;
  w.t_mono = static_cast<std::int64_t>(
      std::ceil(3.0 * std::log(n / (1.0 - eps)) / std::log(w2 / w3)));
  if (alpha1 == 0.0) {
    w.open_ended = true;
    w.window_empty = false;
    w.t_lo = static_cast<double>(w.t_mono);
    w.t_hi = n * n;
    return w;
  }
  const double a1 = std::abs(alpha1);
  w.t_lo = std::log(n / a1) / std::log(1.0 / w3);
  w.t_hi = std::log(std::abs(alpha2) * (1.0 - eps) / (2.0 * a1)) /
           std::log(1.0 / w2);
  w.window_empty = !(w.t_lo <= w.t_hi);
  return w;
}

SignPropertyReport VerifySignProperties(
    const ClusteredGraph& g, const GraphSpectrum& spec, const StateVector& x0,
    double eps, const std::vector<std::int64_t>& mono_times,
    const std::vector<std::int64_t>& sign_times) {
  const FirstMomentDecomposition fmd =
      ComputeFirstMomentDecomposition(g, spec, x0);
  const BadNodes bad = BadNodeSet(spec, eps);
  std::vector<char> is_bad(g.n(), 0);
  for (int u : bad.nodes) is_bad[u] = 1;

  std::int64_t t_max = 0;
  for (auto t : mono_times) t_max = std::max(t_max, t);
  for (auto t : sign_times) t_max = std::max(t_max, t);
  std::vector<char> want_mono(t_max + 1, 0);
  std::vector<char> want_sign(t_max + 1, 0);
  for (auto t : mono_times) {
    if (t >= 1) want_mono[t] = 1;
  }
  for (auto t : sign_times) {
    if (t >= 0) want_sign[t] = 1;
  }

  SignPropertyReport r;
  const int n = g.n();
  StateVector ex = x0;
  std::vector<double> ly(n);
  const double scale = 0.5 / static_cast<double>(g.m());
  for (std::int64_t t = 0; t <= t_max; ++t) {
    if (want_sign[t]) {
      for (int u = 0; u < n; ++u) {
        if (is_bad[u]) continue;
        ++r.checked;
        const double expect = fmd.alpha2 * g.chi()[u];
        if ((ex[u] > 0.0) != (expect > 0.0) || ex[u] == 0.0) ++r.sign_failures;
      }
    }
    if (t == t_max) break;
    // E[x^(t)] - E[x^(t+1)] = (delta/m) L E[x^(t)]; constants cancel in L.
    std::fill(ly.begin(), ly.end(), 0.0);
    for (const Edge& e : g.edges()) {
      const double diff = ex[e.u] - ex[e.v];
      ly[e.u] += diff;
      ly[e.v] -= diff;
    }
    if (want_mono[t + 1]) {
      for (int u = 0; u < n; ++u) {
        if (is_bad[u]) continue;
        ++r.checked;
        const double expect = fmd.alpha2 * g.chi()[u];
        if ((ly[u] > 0.0) != (expect > 0.0) || ly[u] == 0.0) {
          ++r.monotonicity_failures;
        }
      }
    }
    for (int u = 0; u < n; ++u) ex[u] -= scale * ly[u];
  }
  return r;
}

double MuExpected(double a_y0, std::int64_t t, double delta, int b, int d,
                  int n) {
  const double rate = 1.0 - 4.0 * delta * b / (static_cast<double>(d) * n);
  return std::pow(rate, static_cast<double>(t)) * a_y0;
}

double RecursionEnvelope::mu(std::int64_t t, double a_y0) const {
  return std::pow(std::sqrt(xi), static_cast<double>(t)) * a_y0;
}

RecursionEnvelope ComputeRecursionEnvelope(double y0_sq, double z0_sq,
                                           double delta, int b, int d,
                                           double lambda3, int n,
                                           std::int64_t t_max) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::kInvalidParams, "delta must lie in (0, 1)");
  }
  if (t_max < 0) throw Error(ErrorKind::kInvalidParams, "t_max must be >= 0");
  const double nn = n;
  const double bd = static_cast<double>(b) / d;
  const double lambda2 = 2.0 * bd;
  RecursionEnvelope r;
  r.a11 = 1.0 - 8.0 * delta * bd / nn + 16.0 * delta * delta * bd / (nn * nn);
  r.a12 = 16.0 * delta * delta * bd / (nn * nn);
  r.a21 = 8.0 * delta * delta * bd / nn;
  r.a22 = 1.0 - 4.0 * delta * (1.0 - delta) * lambda3 / nn;
  const double q = 1.0 - 4.0 * delta * bd / nn;
  r.xi = q * q;
  r.xi1 = 1.0 - 8.0 * delta * bd / nn + 336.0 * delta * delta * bd / (nn * nn);
  r.xi2 = r.a22;
  r.eps = delta / (lambda3 - lambda2);
  r.beta = y0_sq > 0.0 ? z0_sq / (nn * y0_sq)
                       : std::numeric_limits<double>::infinity();
  r.kappa = 1.0 + 40.0 * r.eps * bd * r.beta;

  r.y_hat.resize(t_max + 1);
  r.z_hat.resize(t_max + 1);
  r.y_closed.resize(t_max + 1);
  r.z_closed.resize(t_max + 1);
  double y = y0_sq;
  double z = z0_sq;
  double p1 = 1.0;
  double p2 = 1.0;
  for (std::int64_t t = 0; t <= t_max; ++t) {
    r.y_hat[t] = y;
    r.z_hat[t] = z;
    r.y_closed[t] = r.kappa * p1 * y0_sq;
    r.z_closed[t] =
        (20.0 * r.eps * bd * r.kappa * p1 + r.beta * nn * p2) * y0_sq;
    const double slack = 1e-12;
    if (y > r.y_closed[t] * (1.0 + slack) + slack ||
        z > r.z_closed[t] * (1.0 + slack) + slack) {
      r.closed_bounds_hold = false;
    }
    const double ny = r.a11 * y + r.a12 * z;
    const double nz = r.a21 * y + r.a22 * z;
    y = ny;
    z = nz;
    p1 *= r.xi1;
    p2 *= r.xi2;
  }
  return r;
}

std::vector<double> EnvelopeRatio(double y0_sq, double z0_sq, double delta,
                                  int b, int d, double lambda3, int n,
                                  const std::vector<std::int64_t>& times) {
  const RecursionEnvelope e =
      ComputeRecursionEnvelope(y0_sq, z0_sq, delta, b, d, lambda3, n, 0);
  if (!(y0_sq > 0.0)) {
    throw Error(ErrorKind::kInvalidParams, "y0_sq must be positive");
  }
  std::vector<double> out;
  out.reserve(times.size());
  double y = 1.0;
  double z = z0_sq / y0_sq;
  std::int64_t t = 0;
  for (const std::int64_t target : times) {
    if (target < t) {
      throw Error(ErrorKind::kInvalidParams, "times must be ascending");
    }
    for (; t < target; ++t) {
      const double ny = e.a11 * y + e.a12 * z;
      z = (e.a21 * y + e.a22 * z) / ny;
      y = 1.0;
    }
    out.push_back(z / y);
  }
  return out;
}

ConcentrationWindow ConcentrationWindowFor(int n, int d, int b, double lambda2,
                                           double lambda3, double delta) {
  const double gap = lambda3 - lambda2;
  if (!(gap > 0.0) || !(delta > 0.0)) {
    throw Error(ErrorKind::kDegenerateGap, "lambda3 must exceed lambda2");
  }
  const double nn = n;
  ConcentrationWindow w;
  w.lo = nn / (delta * gap) * std::log(nn / delta);
  w.hi = nn * nn / (delta * gap) * std::cbrt(std::pow(d * gap / (delta * b), 2.0));
  w.ratio_target = std::sqrt(delta * b / (d * gap));
  return w;
}

double MomBoundRhs(double lambda2, std::int64_t t, int n) {
  return 3.0 * lambda2 * static_cast<double>(t) / n;
}

MomWindow MomBoundWindow(double lambda2, double lambda3, int n) {
  const double nn = n;
  return {3.0 * nn * std::log(nn) / lambda3, nn / (4.0 * lambda2)};
}

}  // namespace avgsim
