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
#include <cmath>
#include <limits>
#include <vector>

#include "avgsim/dynamics.hpp"
#include "avgsim/error.hpp"
#include "avgsim/graph.hpp"
#include "avgsim/metrics.hpp"
#include "avgsim/rng.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace avgsim {
namespace {

TEST_SUITE("dynamics") {
  TEST_CASE("initial states are seeded Rademacher vectors") {
    const StateVector a = InitRandomState(4, 11);
    CHECK(a == InitRandomState(4, 11));
    for (double v : InitRandomState(1000, 3)) CHECK((v == 1.0 || v == -1.0));
    CHECK_THROWS_AS(InitRandomState(0, 1), Error);
  }

  TEST_CASE("E[a_y(0)^2] is 1") {
    const ClusteredGraph g = GenerateClusteredRegular(32, 6, 1, 1);
    MeanAccumulator acc;
    for (std::uint64_t s = 0; s < 100000; ++s) {
      const StateVector x = InitRandomState(32, DeriveSeed(17, s));
      const double a = Project(x.data(), g.chi()).a_y;
      acc.Add(a * a);
    }
    CHECK(std::abs(acc.mean() - 1.0) < 0.02);
  }

  // Both half sums of 32 signs must be nonzero. Exact rate: (1 - p0)^2 with
  // p0 = C(32,16) / 2^32.
  TEST_CASE("projections on 1 and chi match the binomial rate") {
    const ClusteredGraph g = GenerateClusteredRegular(64, 8, 1, 1);
    const double eps = 0.1;
    const double cut = eps * std::sqrt(64.0);
    int ok = 0;
    constexpr int kSeeds = 100000;
    for (std::uint64_t s = 0; s < kSeeds; ++s) {
      const StateVector x = InitRandomState(64, DeriveSeed(23, s));
      double s1 = 0.0;
      double sc = 0.0;
      for (int u = 0; u < 64; ++u) {
        s1 += x[u];
        sc += x[u] * g.chi()[u];
      }
      ok += std::abs(s1 + sc) >= cut && std::abs(s1 - sc) >= cut;
    }
    const double p0 = 601080390.0 / 4294967296.0;
    const double expected = (1.0 - p0) * (1.0 - p0);
    const double se = std::sqrt(expected * (1.0 - expected) / kSeeds);
    CHECK(std::abs(static_cast<double>(ok) / kSeeds - expected) < 4.0 * se);
  }

  TEST_CASE("single step arithmetic") {
    StateVector x = {1.0, -1.0};
    CHECK(Step(x, {0, 1}, 0.5) == StateVector{0.0, 0.0});
    CHECK(Step(x, {0, 1}, 0.25) == StateVector{0.5, -0.5});
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
      const StateVector y = {rng.Uniform(), rng.Uniform(), rng.Uniform()};
      const StateVector z = Step(y, {2, 0}, rng.Uniform());
      CHECK(z[0] + z[2] == doctest::Approx(y[0] + y[2]).epsilon(1e-15));
      CHECK(z[1] == y[1]);
    }
    CHECK_THROWS_AS(Step(x, {0, 0}, 0.5), Error);
    CHECK_THROWS_AS(Step(x, {0, 2}, 0.5), Error);
  }

  TEST_CASE("decomposition is orthogonal and complete") {
    const ClusteredGraph g = GenerateClusteredRegular(16, 5, 1, 1);
    Rng rng(2);
    StateVector x(16);
    for (double& v : x) v = rng.Uniform() * 4.0 - 2.0;
    const Decomposition d = Decompose(x, g.chi());
    double z1 = 0.0;
    double zc = 0.0;
    double zz = 0.0;
    double xx = 0.0;
    for (int u = 0; u < 16; ++u) {
      z1 += d.z[u];
      zc += d.z[u] * g.chi()[u];
      zz += d.z[u] * d.z[u];
      xx += x[u] * x[u];
    }
    CHECK(z1 == doctest::Approx(0.0).scale(1.0));
    CHECK(zc == doctest::Approx(0.0).scale(1.0));
    CHECK(zz == doctest::Approx(d.z_norm_sq));
    CHECK(d.a_par * d.a_par + d.y_norm_sq + d.z_norm_sq == doctest::Approx(xx));
    const Projection p = Project(x.data(), g.chi());
    CHECK(p.a_y == doctest::Approx(d.a_y));
    CHECK(p.z_norm_sq == doctest::Approx(d.z_norm_sq));
  }

  TEST_CASE("zero rounds records only t = 0") {
    const ClusteredGraph g = GenerateClusteredRegular(16, 5, 1, 1);
    RunOptions o;
    o.rounds = 0;
    o.seed = 3;
    const RunResult r = Run(g, o);
    REQUIRE(r.series.size() == 1);
    CHECK(r.series[0].t == 0);
    CHECK(r.x0 == r.x_final);
  }

  TEST_CASE("observations land on the requested grid and the last round") {
    const ClusteredGraph g = GenerateClusteredRegular(16, 5, 1, 1);
    RunOptions o;
    o.rounds = 25;
    o.observe_every = 10;
    const RunResult r = Run(g, o);
    REQUIRE(r.series.size() == 4);
    CHECK(r.series[1].t == 10);
    CHECK(r.series[3].t == 25);
  }

  TEST_CASE("conservation over 10^6 rounds") {
    const ClusteredGraph g = GenerateClusteredRegular(256, 16, 1, 4);
    RunOptions o;
    o.delta = 0.3;
    o.rounds = 1000000;
    o.observe_every = 50000;
    o.seed = 8;
    const RunResult r = Run(g, o);
    for (const Observation& ob : r.series) {
      CHECK(std::abs(ob.a_par - r.series[0].a_par) < 1e-9);
    }
    double s0 = 0.0;
    double s1 = 0.0;
    for (int u = 0; u < 256; ++u) {
      s0 += r.x0[u];
      s1 += r.x_final[u];
    }
    CHECK(std::abs(s1 - s0) < 1e-12);
    const RunResult again = Run(g, o);
    CHECK(again.x_final == r.x_final);
  }

  TEST_CASE("cross-edge drift of chi stays within the claim") {
    const ClusteredGraph g = GenerateClusteredRegular(64, 8, 1, 1);
    for (double delta : {0.5, 0.3, 0.9}) {
      RunOptions o;
      o.delta = delta;
      o.rounds = 100000;
      o.observe_every = 97;
      o.track_chi = true;
      o.seed = 12;
      const RunResult r = Run(g, o);
      CHECK(r.chi_claim_worst_excess <= 1e-12);
      CHECK(r.series.back().cross_count == r.cross_count);
      CHECK(r.cross_count > 0);
    }
    CHECK(CrossEdgeBound(3, 0.5) == doctest::Approx(12.0));
    CHECK(CrossEdgeBound(3, 0.75) == doctest::Approx(18.0));
  }

  TEST_CASE("local-to-global time map") {
    const ClusteredGraph g = GenerateClusteredRegular(16, 5, 1, 1);
    ActivationSchedule s(g, 77, true);
    std::int64_t first = -1;
    while (s.local_count(3) < 5) {
      const Edge e = s.Next();
      if (first < 0 && (e.u == 3 || e.v == 3)) first = s.step();
    }
    CHECK(s.LocalToGlobal(3, 0) == 0);
    CHECK(s.LocalToGlobal(3, 1) == first);
    CHECK(s.LocalToGlobal(3, 5) <= s.step());
    CHECK_THROWS_AS(s.LocalToGlobal(3, 6), Error);
    ActivationSchedule plain(g, 77, false);
    plain.Next();
    CHECK_THROWS_AS(plain.LocalToGlobal(0, 1), Error);
  }

  TEST_CASE("E[T_u(100)] is 0.5 n tau") {
    const ClusteredGraph g = GenerateClusteredRegular(100, 10, 1, 2);
    MeanAccumulator acc;
    for (std::uint64_t i = 0; i < 10000; ++i) {
      ActivationSchedule s(g, DeriveSeed(31, i), true);
      while (s.local_count(0) < 100) s.Next();
      acc.Add(static_cast<double>(s.LocalToGlobal(0, 100)));
    }
    CHECK(std::abs(acc.mean() - 5000.0) <= 0.05 * 5000.0);
  }
}

}  // namespace
}  // namespace avgsim
