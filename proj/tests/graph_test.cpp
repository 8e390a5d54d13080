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
#include "avgsim/spectral.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace avgsim {
namespace {

ErrorKind KindOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an avgsim::Error");
  return ErrorKind::kConfig;
}

double ChiResidual(const ClusteredGraph& g) {
  const int n = g.n();
  const std::vector<double> l = NormalizedLaplacian(g);
  std::vector<double> v = testing::ChiVector(g);
  for (double& x : v) x /= std::sqrt(static_cast<double>(n));
  const std::vector<double> lv = testing::MatVec(l, v);
  const double lam = 2.0 * g.b() / g.d();
  double r = 0.0;
  for (int u = 0; u < n; ++u) r += (lv[u] - lam * v[u]) * (lv[u] - lam * v[u]);
  return std::sqrt(r);
}

TEST_SUITE("graph") {
  TEST_CASE("(8,3,1): two inner neighbors and one cross neighbor per node") {
    const ClusteredGraph g = GenerateClusteredRegular(8, 3, 1, 1);
    CHECK(g.m() == 12);
    for (int u = 0; u < 8; ++u) {
      CHECK(g.degree(u) == 3);
      CHECK(g.cross_degree(u) == 1);
    }
    CHECK(VerifyClusteredInvariants(g).ok());
    CHECK(ChiResidual(g) < 1e-9);
    CHECK(g.cut_size() == 4);
  }

  TEST_CASE("frozen fingerprints") {
    CHECK(Fingerprint(GenerateClusteredRegular(8, 3, 1, 1)) ==
          0xcd73624ae1c80a2fULL);
    CHECK(Fingerprint(GenerateClusteredRegular(16, 5, 1, 1)) ==
          0xb09b2f8adfb3fc31ULL);
  }

  TEST_CASE("generation is a function of the seed") {
    const auto a = GenerateClusteredRegular(64, 8, 1, 5);
    const auto b = GenerateClusteredRegular(64, 8, 1, 5);
    const auto c = GenerateClusteredRegular(64, 8, 1, 6);
    CHECK(a.edges() == b.edges());
    CHECK(Fingerprint(a) != Fingerprint(c));
  }

  TEST_CASE("parameter errors") {
    CHECK(KindOf([] { GenerateClusteredRegular(8, 3, 2, 1); }) ==
          ErrorKind::kInvalidParams);
    CHECK(KindOf([] { GenerateClusteredRegular(9, 3, 1, 1); }) ==
          ErrorKind::kInvalidParams);
    CHECK(KindOf([] { GenerateClusteredRegular(8, 8, 1, 1); }) ==
          ErrorKind::kInvalidParams);
    CHECK(KindOf([] { GenerateClusteredRegular(8, 3, 0, 1); }) ==
          ErrorKind::kInvalidParams);
    // Five nodes per side with inner degree 3: odd stub count.
    CHECK(KindOf([] { GenerateClusteredRegular(10, 4, 1, 1); }) ==
          ErrorKind::kParity);
  }

  TEST_CASE("(500,50,5) seed 7 is connected and passes verification") {
    const ClusteredGraph g = GenerateClusteredRegular(500, 50, 5, 7);
    const VerificationReport r = VerifyClusteredInvariants(g);
    CHECK(r.ok());
    CHECK(r.connected);
    CHECK_FALSE(r.bipartite);
    CHECK(r.balanced);
    CHECK(IsConnected(g));
  }

  TEST_CASE("deleting one edge yields two degree violations") {
    const ClusteredGraph g = GenerateClusteredRegular(8, 3, 1, 1);
    std::vector<Edge> edges = g.edges();
    edges.erase(edges.begin());
    const ClusteredGraph h(GraphKind::kClusteredRegular, 8, 3, 1, g.chi(), edges);
    const VerificationReport r = VerifyClusteredInvariants(h);
    CHECK_FALSE(r.ok());
    CHECK(r.degree_violations == 2);
  }

  TEST_CASE("constructor rejects self-loops, duplicates and bad ids") {
    const std::vector<int> chi = {1, 1, -1, -1};
    CHECK(KindOf([&] {
            ClusteredGraph(GraphKind::kClusteredRegular, 4, 1, 1, chi,
                           {{0, 0}});
          }) == ErrorKind::kInvalidEdge);
    CHECK(KindOf([&] {
            ClusteredGraph(GraphKind::kClusteredRegular, 4, 1, 1, chi,
                           {{0, 2}, {2, 0}});
          }) == ErrorKind::kInvalidEdge);
    CHECK(KindOf([&] {
            ClusteredGraph(GraphKind::kClusteredRegular, 4, 1, 1, chi,
                           {{0, 7}});
          }) == ErrorKind::kInvalidEdge);
  }

  TEST_CASE("SBM with p = q = 1 is complete with zero spread") {
    const ClusteredGraph g = GenerateSbm({100, 1.0, 1.0}, 1);
    CHECK(g.m() == 100 * 99 / 2);
    CHECK(g.beta == doctest::Approx(0.0));
  }

  TEST_CASE("SBM with no edges is an error") {
    CHECK(KindOf([] { GenerateSbm({100, 0.0, 0.0}, 1); }) ==
          ErrorKind::kEmptyGraph);
  }

  TEST_CASE("SBM (400, 0.2, 0.01) seed 3: measured spread") {
    const ClusteredGraph g = GenerateSbm({400, 0.2, 0.01}, 3);
    CHECK(g.beta < 0.5);
    // Measured on this sample.
    CHECK(g.beta == doctest::Approx(0.447527141133896).epsilon(1e-12));
    CHECK(g.m() == 8290);
    const VerificationReport r = VerifyClusteredInvariants(g);
    CHECK_FALSE(r.cross_checked);
    CHECK(r.beta == doctest::Approx(g.beta));
  }

  TEST_CASE("a sweep of grid points verifies cleanly") {
    struct P {
      int n, d, b;
    };
    for (const P p : {P{16, 3, 1}, P{16, 7, 3}, P{32, 6, 1}, P{64, 12, 5},
                      P{128, 16, 1}, P{256, 32, 1}}) {
      for (std::uint64_t s = 0; s < 3; ++s) {
        const ClusteredGraph g = GenerateClusteredRegular(p.n, p.d, p.b, s);
        CHECK(VerifyClusteredInvariants(g).ok());
        CHECK(ChiResidual(g) < 1e-9);
      }
    }
  }

  TEST_CASE("bipartite and connectivity helpers") {
    // A 4-cycle: connected and bipartite.
    const ClusteredGraph c4(GraphKind::kClusteredRegular, 4, 2, 1,
                            {1, 1, -1, -1}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(IsConnected(c4));
    CHECK(IsBipartite(c4));
    const ClusteredGraph split(GraphKind::kClusteredRegular, 4, 1, 0,
                               {1, 1, -1, -1}, {{0, 1}, {2, 3}});
    CHECK_FALSE(IsConnected(split));
  }
}

}  // namespace
}  // namespace avgsim
