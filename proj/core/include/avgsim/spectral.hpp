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
#ifndef AVGSIM_SPECTRAL_HPP_
#define AVGSIM_SPECTRAL_HPP_

#include <cstdint>
#include <vector>

#include "avgsim/graph.hpp"

namespace avgsim {

// Dense symmetric eigendecomposition. Values ascend; vectors are stored
// column-major, column i belongs to values[i].
struct SymmetricEigen {
  int n = 0;
  std::vector<double> values;
  std::vector<double> vectors;

  double vec(int row, int col) const {
    return vectors[static_cast<std::size_t>(col) * n + row];
  }
};

// Cyclic Jacobi rotations on a row-major symmetric matrix. Stops once the
// off-diagonal Frobenius norm drops below `tol`; throws NotConverged when
// `max_sweeps` is exhausted first.
SymmetricEigen JacobiEigen(std::vector<double> a, int n, double tol,
                           int max_sweeps = 100);

enum class EigenBackend { kEigen, kJacobi };

// Row-major dense matrices built from the graph.
std::vector<double> NormalizedLaplacian(const ClusteredGraph& g);
std::vector<double> CombinatorialLaplacian(const ClusteredGraph& g);

struct GraphSpectrum {
  int n = 0;
  std::int64_t m = 0;
  std::int64_t m12 = 0;
  int d_min = 0;
  int d_max = 0;
  double eig_tolerance = 1e-10;

  // Normalized Laplacian, ascending.
  std::vector<double> lambdas;
  // Combinatorial Laplacian L = D - A, ascending.
  std::vector<double> laplacian_lambdas;
  // Expected one-step matrix at delta = 1/2, I - L/(2m), descending.
  std::vector<double> wbar_lambdas;

  std::vector<double> f;
  std::vector<double> f_par;
  std::vector<double> f_perp;
  double f_perp_norm_sq = 0.0;
  // Size of the block of W-bar eigenvalues treated as the second eigenspace.
  int second_block_size = 0;

  // Eigenvectors of L (column-major), aligned with laplacian_lambdas.
  std::vector<double> laplacian_vectors;

  double lambda2() const { return lambdas.at(1); }
  double lambda3() const { return lambdas.at(2); }
  double wbar2() const { return wbar_lambdas.at(1); }
  double wbar3() const { return wbar_lambdas.at(2); }

  // Rayleigh quotient of chi on the normalized Laplacian.
  double chi_rayleigh = 0.0;
  // Smallest normalized-Laplacian eigenvalue on the complement of the
  // kernel and of the eigenvector closest to chi.
  double lambda_perp_min = 0.0;
};

GraphSpectrum ComputeSpectrum(const ClusteredGraph& g, double tol = 1e-10,
                              EigenBackend backend = EigenBackend::kEigen);

struct FPerpBound {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

FPerpBound FPerpBoundCheck(const ClusteredGraph& g, const GraphSpectrum& spec);

struct BadNodes {
  std::vector<int> nodes;
  double bound = 0.0;
  bool within_bound = false;
};

BadNodes BadNodeSet(const GraphSpectrum& spec, double eps);

struct EigenRelations {
  // |lambda_i - (1 - lambda_i(P))| with P = D^{-1} A solved independently.
  double transition_residual = 0.0;
  bool transition_ok = false;
  // |lambda_i(L) - 2m (1 - wbar_i)|.
  double wbar_residual = 0.0;
  bool wbar_ok = false;
  // Worst violation of d_min lambda_i <= lambda_i(L) <= d_max lambda_i.
  double degree_violation = 0.0;
  bool degree_ok = false;
  // (d/2m)(1 -+ 2 gamma)(lambda3 - lambda2) around wbar2 - wbar3.
  double gamma = 0.0;
  double gap = 0.0;
  double gap_lower = 0.0;
  double gap_upper = 0.0;
  bool gap_ok = false;
  bool lambda3_ge_3lambda2 = false;

  bool all_ok() const {
    return transition_ok && wbar_ok && degree_ok && gap_ok;
  }
};

EigenRelations EigenvalueRelationsCheck(const ClusteredGraph& g,
                                        const GraphSpectrum& spec,
                                        double tol = 1e-8);

}  // namespace avgsim

#endif  // AVGSIM_SPECTRAL_HPP_
