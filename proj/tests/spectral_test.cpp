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
#include <algorithm>
#include <cmath>
#include <vector>

#include "avgsim/error.hpp"
#include "avgsim/graph.hpp"
#include "avgsim/rng.hpp"
#include "avgsim/spectral.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace avgsim {
namespace {

ClusteredGraph K4() {
  return ClusteredGraph(GraphKind::kClusteredRegular, 4, 3, 2, {1, 1, -1, -1},
                        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

TEST_SUITE("spectral") {
  TEST_CASE("Jacobi diagonalizes a random symmetric matrix") {
    constexpr int n = 12;
    Rng rng(9);
    std::vector<double> a(n * n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        a[i * n + j] = a[j * n + i] = 2.0 * rng.Uniform() - 1.0;
      }
    }
    const SymmetricEigen e = JacobiEigen(a, n, 1e-14);
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
    double trace = 0.0;
    for (int i = 0; i < n; ++i) trace += a[i * n + i];
    double sum = 0.0;
    for (double v : e.values) sum += v;
    CHECK(sum == doctest::Approx(trace).epsilon(1e-12));
    for (int c = 0; c < n; ++c) {
      std::vector<double> v(n);
      for (int r = 0; r < n; ++r) v[r] = e.vec(r, c);
      const std::vector<double> av = testing::MatVec(a, v);
      for (int r = 0; r < n; ++r) CHECK(av[r] == doctest::Approx(e.values[c] * v[r]).epsilon(1e-9).scale(1.0));
    }
  }

  TEST_CASE("Jacobi reports non-convergence") {
    std::vector<double> a = {0.0, 1.0, 1.0, 0.0};
    CHECK_THROWS_AS(JacobiEigen(a, 2, 1e-30, 0), Error);
  }

  TEST_CASE("(8,3,1): 2/3 is an eigenvalue with chi as eigenvector") {
    const ClusteredGraph g = GenerateClusteredRegular(8, 3, 1, 1);
    const GraphSpectrum s = ComputeSpectrum(g);
    const bool found = std::any_of(s.lambdas.begin(), s.lambdas.end(), [](double l) {
      return std::abs(l - 2.0 / 3.0) < 1e-9;
    });
    CHECK(found);
    CHECK(s.lambda2() == doctest::Approx(2.0 / 3.0));
    CHECK(s.chi_rayleigh == doctest::Approx(2.0 / 3.0));
  }

  TEST_CASE("K4 spectrum is {0, 4/3, 4/3, 4/3} on both backends") {
    for (EigenBackend be : {EigenBackend::kEigen, EigenBackend::kJacobi}) {
      const GraphSpectrum s = ComputeSpectrum(K4(), 1e-12, be);
      CHECK(s.lambdas[0] == doctest::Approx(0.0).scale(1.0));
      for (int i = 1; i < 4; ++i) CHECK(s.lambdas[i] == doctest::Approx(4.0 / 3.0));
    }
  }

  TEST_CASE("kernel vector is D^(1/2) 1 on an irregular graph") {
    const ClusteredGraph g = GenerateSbm({60, 0.3, 0.05}, 2);
    REQUIRE(IsConnected(g));
    const SymmetricEigen e = JacobiEigen(NormalizedLaplacian(g), g.n(), 1e-13);
    CHECK(e.values[0] == doctest::Approx(0.0).scale(1.0));
    double norm = 0.0;
    for (int u = 0; u < g.n(); ++u) norm += g.degree(u);
    norm = std::sqrt(norm);
    double dot = 0.0;
    for (int u = 0; u < g.n(); ++u) dot += e.vec(u, 0) * std::sqrt(1.0 * g.degree(u)) / norm;
    CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("Eigen backend agrees with the Jacobi oracle") {
    for (const ClusteredGraph& g :
         {GenerateClusteredRegular(32, 6, 1, 3), GenerateSbm({80, 0.25, 0.03}, 4)}) {
      const GraphSpectrum a = ComputeSpectrum(g, 1e-12, EigenBackend::kEigen);
      const GraphSpectrum b = ComputeSpectrum(g, 1e-12, EigenBackend::kJacobi);
      for (int i = 0; i < g.n(); ++i) {
        CHECK(a.lambdas[i] == doctest::Approx(b.lambdas[i]).epsilon(1e-9).scale(1.0));
        CHECK(a.laplacian_lambdas[i] ==
              doctest::Approx(b.laplacian_lambdas[i]).epsilon(1e-9).scale(1.0));
      }
    }
  }

  TEST_CASE("frozen spectrum of (16,5,1) seed 1") {
    // Jacobi oracle value.
    const GraphSpectrum s = ComputeSpectrum(GenerateClusteredRegular(16, 5, 1, 1));
    CHECK(s.lambda2() == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(s.lambda3() == doctest::Approx(0.618545437643871).epsilon(1e-10));
  }

  TEST_CASE("W-bar eigenvalues are 1 - lambda^L / 2m, descending") {
    const ClusteredGraph g = GenerateClusteredRegular(32, 6, 1, 3);
    const GraphSpectrum s = ComputeSpectrum(g);
    CHECK(std::is_sorted(s.wbar_lambdas.rbegin(), s.wbar_lambdas.rend()));
    for (int i = 0; i < g.n(); ++i) {
      CHECK(s.wbar_lambdas[i] ==
            doctest::Approx(1.0 - s.laplacian_lambdas[i] / (2.0 * g.m())));
    }
    CHECK(s.m12 == g.cut_size());
  }

  TEST_CASE("f_perp vanishes on clustered-regular graphs") {
    const ClusteredGraph g = GenerateClusteredRegular(64, 8, 1, 2);
    const GraphSpectrum s = ComputeSpectrum(g);
    REQUIRE(s.lambda3() > s.lambda2());
    const FPerpBound f = FPerpBoundCheck(g, s);
    CHECK(f.lhs < 1e-18);
    CHECK(f.holds);
    CHECK(s.f_perp_norm_sq < 1e-18);
  }

  TEST_CASE("f_perp bound on an SBM sample") {
    const ClusteredGraph g = GenerateSbm({200, 0.3, 0.02}, 5);
    const GraphSpectrum s = ComputeSpectrum(g);
    const FPerpBound f = FPerpBoundCheck(g, s);
    CHECK(f.holds);
    CHECK(f.lhs == doctest::Approx(0.0127059).epsilon(1e-4));
    CHECK(f.rhs == doctest::Approx(0.280267).epsilon(1e-4));
  }

  TEST_CASE("degenerate second eigenspace") {
    const ClusteredGraph g = K4();
    const GraphSpectrum s = ComputeSpectrum(g);
    CHECK_THROWS_AS(FPerpBoundCheck(g, s), Error);
    CHECK_THROWS_AS(BadNodeSet(s, 0.1), Error);
  }

  TEST_CASE("bad node set") {
    const ClusteredGraph g = GenerateClusteredRegular(64, 8, 1, 2);
    const GraphSpectrum s = ComputeSpectrum(g);
    CHECK(BadNodeSet(s, 1e-3).nodes.empty());
    CHECK(BadNodeSet(s, 1e9).nodes.empty());
    const ClusteredGraph h = GenerateSbm({200, 0.3, 0.02}, 5);
    const GraphSpectrum hs = ComputeSpectrum(h);
    for (double eps : {0.05, 0.1, 0.3}) {
      const BadNodes b = BadNodeSet(hs, eps);
      CHECK(b.within_bound);
      CHECK(static_cast<double>(b.nodes.size()) <= b.bound);
    }
    CHECK(BadNodeSet(hs, 1e9).nodes.empty());
  }

  TEST_CASE("eigenvalue relations") {
    const ClusteredGraph g = GenerateClusteredRegular(32, 6, 1, 3);
    const GraphSpectrum s = ComputeSpectrum(g);
    for (int i = 0; i < g.n(); ++i) {
      CHECK(s.laplacian_lambdas[i] == doctest::Approx(6.0 * s.lambdas[i]).epsilon(1e-10).scale(1.0));
    }
    const EigenRelations k4 = EigenvalueRelationsCheck(K4(), ComputeSpectrum(K4()), 1e-10);
    CHECK(k4.transition_ok);
    CHECK(k4.wbar_ok);
    CHECK(k4.degree_ok);
    CHECK(k4.transition_residual < 1e-10);
    CHECK(k4.wbar_residual < 1e-10);
    const ClusteredGraph h = GenerateSbm({200, 0.3, 0.02}, 5);
    const EigenRelations r = EigenvalueRelationsCheck(h, ComputeSpectrum(h));
    CHECK(r.all_ok());
    CHECK(r.lambda3_ge_3lambda2);
  }
}

}  // namespace
}  // namespace avgsim
