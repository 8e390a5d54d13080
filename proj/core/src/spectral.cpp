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
#include "avgsim/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "avgsim/error.hpp"

namespace avgsim {

namespace {

double OffDiagonalNorm(const std::vector<double>& a, int n) {
  double s = 0.0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const double x = a[static_cast<std::size_t>(p) * n + q];
      s += 2.0 * x * x;
    }
  }
  return std::sqrt(s);
}

SymmetricEigen SortAscending(const std::vector<double>& values,
                             const std::vector<double>& vectors, int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] < values[b]; });
  SymmetricEigen out;
  out.n = n;
  out.values.resize(n);
  out.vectors.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    out.values[i] = values[order[i]];
    std::copy_n(vectors.begin() + static_cast<std::size_t>(order[i]) * n, n,
                out.vectors.begin() + static_cast<std::size_t>(i) * n);
  }
  return out;
}

SymmetricEigen EigenSolve(const std::vector<double>& a, int n) {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      mat(a.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kNotConverged, "symmetric eigensolver failed");
  }
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + n);
  std::vector<double> vectors(solver.eigenvectors().data(),
                              solver.eigenvectors().data() +
                                  static_cast<std::size_t>(n) * n);
  return SortAscending(values, vectors, n);
}

SymmetricEigen Solve(const std::vector<double>& a, int n, double tol,
                     EigenBackend backend) {
  if (backend == EigenBackend::kJacobi) return JacobiEigen(a, n, tol);
  return EigenSolve(a, n);
}

}  // namespace

SymmetricEigen JacobiEigen(std::vector<double> a, int n, double tol,
                           int max_sweeps) {
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;
  auto at = [&a, n](int r, int c) -> double& {
    return a[static_cast<std::size_t>(r) * n + c];
  };
  // v is column-major: column j holds the j-th eigenvector.
  auto vt = [&v, n](int r, int c) -> double& {
    return v[static_cast<std::size_t>(c) * n + r];
  };
  bool converged = false;
  for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
    if (OffDiagonalNorm(a, n) < tol) {
      converged = true;
      break;
    }
    if (sweep == max_sweeps) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = at(r, p);
          const double arq = at(r, q);
          at(r, p) = at(p, r) = c * arp - s * arq;
          at(r, q) = at(q, r) = s * arp + c * arq;
        }
        at(p, p) -= t * apq;
        at(q, q) += t * apq;
        at(p, q) = at(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          const double vrp = vt(r, p);
          const double vrq = vt(r, q);
          vt(r, p) = c * vrp - s * vrq;
          vt(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  if (!converged) {
    throw Error(ErrorKind::kNotConverged,
                "Jacobi sweep budget exhausted before tolerance");
  }
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = at(i, i);
  return SortAscending(diag, v, n);
}

std::vector<double> NormalizedLaplacian(const ClusteredGraph& g) {
  const int n = g.n();
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int u = 0; u < n; ++u) {
    if (g.degree(u) > 0) a[static_cast<std::size_t>(u) * n + u] = 1.0;
  }
  for (const Edge& e : g.edges()) {
    const double w = -1.0 / std::sqrt(static_cast<double>(g.degree(e.u)) *
                                      g.degree(e.v));
    a[static_cast<std::size_t>(e.u) * n + e.v] = w;
    a[static_cast<std::size_t>(e.v) * n + e.u] = w;
  }
  return a;
}

std::vector<double> CombinatorialLaplacian(const ClusteredGraph& g) {
  const int n = g.n();
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int u = 0; u < n; ++u) {
    a[static_cast<std::size_t>(u) * n + u] = g.degree(u);
  }
  for (const Edge& e : g.edges()) {
    a[static_cast<std::size_t>(e.u) * n + e.v] = -1.0;
    a[static_cast<std::size_t>(e.v) * n + e.u] = -1.0;
  }
  return a;
}

GraphSpectrum ComputeSpectrum(const ClusteredGraph& g, double tol,
                              EigenBackend backend) {
  const int n = g.n();
  if (g.m() == 0) throw Error(ErrorKind::kEmptyGraph, "graph has no edges");
  GraphSpectrum s;
  s.n = n;
  s.m = g.m();
  s.m12 = g.cut_size();
  s.eig_tolerance = tol;
  s.d_min = g.degree(0);
  s.d_max = g.degree(0);
  for (int u = 0; u < n; ++u) {
    if (g.degree(u) == 0) {
      throw Error(ErrorKind::kInvalidParams, "isolated node");
    }
    s.d_min = std::min(s.d_min, g.degree(u));
    s.d_max = std::max(s.d_max, g.degree(u));
  }

  const SymmetricEigen norm = Solve(NormalizedLaplacian(g), n, tol, backend);
  const SymmetricEigen comb =
      Solve(CombinatorialLaplacian(g), n, tol, backend);
  s.lambdas = norm.values;
  s.laplacian_lambdas = comb.values;
  // Both matrices are positive semidefinite; negative values are round-off.
  for (double& x : s.lambdas) x = std::max(x, 0.0);
  for (double& x : s.laplacian_lambdas) x = std::max(x, 0.0);
  s.laplacian_vectors = comb.vectors;

  const double two_m = 2.0 * static_cast<double>(s.m);
  s.wbar_lambdas.resize(n);
  for (int i = 0; i < n; ++i) {
    s.wbar_lambdas[i] = 1.0 - s.laplacian_lambdas[i] / two_m;
  }

  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  s.f.resize(n);
  for (int u = 0; u < n; ++u) s.f[u] = g.chi()[u] * inv_sqrt_n;

  s.f_par.assign(n, 0.0);
  s.second_block_size = 0;
  if (n >= 2) {
    for (int i = 1; i < n; ++i) {
      if (std::abs(s.wbar_lambdas[i] - s.wbar_lambdas[1]) > tol) break;
      ++s.second_block_size;
      double dot = 0.0;
      for (int u = 0; u < n; ++u) dot += s.f[u] * comb.vec(u, i);
      for (int u = 0; u < n; ++u) s.f_par[u] += dot * comb.vec(u, i);
    }
  }
  double mean_f = 0.0;
  for (double x : s.f) mean_f += x;
  mean_f /= n;
  s.f_perp.resize(n);
  s.f_perp_norm_sq = 0.0;
  for (int u = 0; u < n; ++u) {
    s.f_perp[u] = s.f[u] - s.f_par[u] - mean_f;
    s.f_perp_norm_sq += s.f_perp[u] * s.f_perp[u];
  }

  // chi on the normalized Laplacian.
  double num = 0.0;
  for (const Edge& e : g.edges()) {
    const double diff = g.chi()[e.u] / std::sqrt(g.degree(e.u)) -
                        g.chi()[e.v] / std::sqrt(g.degree(e.v));
    num += diff * diff;
  }
  s.chi_rayleigh = num / n;

  int chi_index = 1;
  double best = -1.0;
  for (int i = 1; i < n; ++i) {
    double dot = 0.0;
    for (int u = 0; u < n; ++u) dot += s.f[u] * norm.vec(u, i);
    if (std::abs(dot) > best) {
      best = std::abs(dot);
      chi_index = i;
    }
  }
  s.lambda_perp_min = 2.0;
  for (int i = 1; i < n; ++i) {
    if (i != chi_index) s.lambda_perp_min = std::min(s.lambda_perp_min,
                                                     s.lambdas[i]);
  }
  return s;
}

FPerpBound FPerpBoundCheck(const ClusteredGraph& g,
                           const GraphSpectrum& spec) {
  const double gap = spec.wbar2() - spec.wbar3();
  if (gap <= spec.eig_tolerance) {
    throw Error(ErrorKind::kDegenerateGap, "wbar2 - wbar3 is not positive");
  }
  FPerpBound r;
  r.lhs = spec.f_perp_norm_sq;
  r.rhs = (2.0 / gap) * static_cast<double>(g.cut_size()) /
          (static_cast<double>(g.n()) * static_cast<double>(g.m()));
  r.holds = r.lhs <= r.rhs + spec.eig_tolerance;
  return r;
}

BadNodes BadNodeSet(const GraphSpectrum& spec, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::kInvalidParams, "eps must be > 0");
  const double gap = spec.wbar2() - spec.wbar3();
  if (gap <= spec.eig_tolerance) {
    throw Error(ErrorKind::kDegenerateGap, "wbar2 - wbar3 is not positive");
  }
  BadNodes r;
  const double threshold = eps / std::sqrt(static_cast<double>(spec.n));
  for (int u = 0; u < spec.n; ++u) {
    if (std::abs(spec.f_perp[u]) >= threshold) r.nodes.push_back(u);
  }
  r.bound = 2.0 * static_cast<double>(spec.m12) /
            (eps * eps * gap * static_cast<double>(spec.m));
  r.within_bound = static_cast<double>(r.nodes.size()) <= r.bound;
  return r;
}

EigenRelations EigenvalueRelationsCheck(const ClusteredGraph& g,
                                        const GraphSpectrum& spec,
                                        double tol) {
  const int n = g.n();
  EigenRelations r;

  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    p(e.u, e.v) = 1.0 / g.degree(e.u);
    p(e.v, e.u) = 1.0 / g.degree(e.v);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> general(p, false);
  std::vector<double> p_values(n);
  for (int i = 0; i < n; ++i) p_values[i] = general.eigenvalues()[i].real();
  std::sort(p_values.begin(), p_values.end(), std::greater<>());
  for (int i = 0; i < n; ++i) {
    r.transition_residual = std::max(
        r.transition_residual, std::abs(spec.lambdas[i] - (1.0 - p_values[i])));
  }
  r.transition_ok = r.transition_residual <= tol;

  const double two_m = 2.0 * static_cast<double>(g.m());
  Eigen::MatrixXd wbar = Eigen::MatrixXd::Identity(n, n);
  for (int u = 0; u < n; ++u) wbar(u, u) -= g.degree(u) / two_m;
  for (const Edge& e : g.edges()) {
    wbar(e.u, e.v) += 1.0 / two_m;
    wbar(e.v, e.u) += 1.0 / two_m;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> wsolver(
      wbar, Eigen::EigenvaluesOnly);
  std::vector<double> w_values(wsolver.eigenvalues().data(),
                               wsolver.eigenvalues().data() + n);
  std::sort(w_values.begin(), w_values.end(), std::greater<>());
  for (int i = 0; i < n; ++i) {
    r.wbar_residual =
        std::max(r.wbar_residual, std::abs(spec.laplacian_lambdas[i] -
                                           two_m * (1.0 - w_values[i])));
  }
  r.wbar_ok = r.wbar_residual <= tol * two_m;

  for (int i = 0; i < n; ++i) {
    const double li = spec.lambdas[i];
    const double ll = spec.laplacian_lambdas[i];
    r.degree_violation = std::max(
        {r.degree_violation, spec.d_min * li - ll, ll - spec.d_max * li});
  }
  r.degree_ok = r.degree_violation <= tol * spec.d_max;

  const double mean_degree = two_m / n;
  for (int u = 0; u < n; ++u) {
    r.gamma = std::max(r.gamma,
                       std::abs(g.degree(u) - mean_degree) / mean_degree);
  }
  const double spread = spec.lambda3() - spec.lambda2();
  r.gap = spec.wbar2() - spec.wbar3();
  r.gap_lower = (mean_degree / two_m) * (1.0 - 2.0 * r.gamma) * spread;
  r.gap_upper = (mean_degree / two_m) * (1.0 + 2.0 * r.gamma) * spread;
  r.gap_ok = r.gap >= r.gap_lower - tol && r.gap <= r.gap_upper + tol;
  r.lambda3_ge_3lambda2 = spec.lambda3() >= 3.0 * spec.lambda2();
  return r;
}

}  // namespace avgsim
