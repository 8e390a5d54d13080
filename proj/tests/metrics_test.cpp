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

std::vector<int> HalfChi(int n) {
  std::vector<int> chi(n);
  for (int u = 0; u < n; ++u) chi[u] = u < n / 2 ? 1 : -1;
  return chi;
}

std::vector<std::int8_t> AsLabels(const std::vector<int>& v, int sign = 1) {
  std::vector<std::int8_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<std::int8_t>(sign * v[i]);
  return out;
}

TEST_SUITE("metrics") {
  TEST_CASE("reconstruction error examples") {
    const std::vector<int> chi = HalfChi(100);
    const ReconstructionScore a = WeakReconstructionError(AsLabels(chi), chi);
    CHECK(a.error_fraction == 0.0);
    CHECK_FALSE(a.flip_used);
    const ReconstructionScore b = WeakReconstructionError(AsLabels(chi, -1), chi);
    CHECK(b.error_fraction == 0.0);
    CHECK(b.flip_used);
    std::vector<std::int8_t> l = AsLabels(chi);
    l[0] = -l[0];
    l[10] = -l[10];
    l[70] = -l[70];
    const ReconstructionScore c = WeakReconstructionError(l, chi);
    CHECK(c.error_fraction == doctest::Approx(0.03));
    CHECK(c.error_v1 == doctest::Approx(0.04));
    CHECK(c.error_v2 == doctest::Approx(0.02));
    CHECK(c.w1_size == 48);
    CHECK(c.w2_size == 49);
    CHECK_THROWS_AS(WeakReconstructionError({1, 0}, {1, -1}), Error);
  }

  TEST_CASE("flip symmetry and the 1/2 ceiling") {
    const std::vector<int> chi = HalfChi(64);
    Rng rng(6);
    for (int k = 0; k < 200; ++k) {
      std::vector<std::int8_t> l(64);
      for (auto& v : l) v = static_cast<std::int8_t>(rng.Sign());
      std::vector<std::int8_t> neg(l);
      for (auto& v : neg) v = static_cast<std::int8_t>(-v);
      const double e = WeakReconstructionError(l, chi).error_fraction;
      CHECK(e == WeakReconstructionError(neg, chi).error_fraction);
      CHECK(e <= 0.5);
    }
  }

  TEST_CASE("CSL on perfect signatures") {
    const int n = 40;
    const int ell = 9;
    const std::vector<int> chi = HalfChi(n);
    std::vector<std::int8_t> l(n * ell);
    for (int u = 0; u < n; ++u) {
      for (int j = 0; j < ell; ++j) l[u * ell + j] = static_cast<std::int8_t>(chi[u]);
    }
    CslScore s = CslEvaluate(l, ell, chi, 0.1);
    CHECK(s.gamma == 0.0);
    CHECK(s.c1_observed == 0.0);
    CHECK(s.c2_observed == 1.0);
    CHECK(s.reference_distance == 1.0);
    CHECK_FALSE(s.pairs_sampled);
    for (int j = 0; j < ell; ++j) l[3 * ell + j] = static_cast<std::int8_t>(-l[3 * ell + j]);
    s = CslEvaluate(l, ell, chi, 0.1);
    CHECK(s.gamma == doctest::Approx(1.0 / n));
    CHECK(s.inlier_set_size == n - 1);
    CHECK(s.c2_observed == 1.0);
  }

  TEST_CASE("CSL with ell = 1 matches the reconstruction error") {
    const int n = 100;
    const std::vector<int> chi = HalfChi(n);
    Rng rng(8);
    int compared = 0;
    for (int k = 0; k < 300; ++k) {
      const double p = 0.45 * rng.Uniform();
      std::vector<std::int8_t> l(n);
      for (int u = 0; u < n; ++u) {
        l[u] = static_cast<std::int8_t>(rng.Bernoulli(p) ? -chi[u] : chi[u]);
        if (k % 2) l[u] = static_cast<std::int8_t>(-l[u]);
      }
      const CslScore s = CslEvaluate(l, 1, chi, 0.2);
      if (s.reference1 == s.reference2) continue;
      ++compared;
      CHECK(s.gamma == doctest::Approx(WeakReconstructionError(l, chi).error_fraction));
    }
    CHECK(compared > 250);
  }

  TEST_CASE("CSL samples pairs above 2000 nodes") {
    const int n = 2200;
    const std::vector<int> chi = HalfChi(n);
    std::vector<std::int8_t> l(n * 3);
    for (int u = 0; u < n; ++u) {
      for (int j = 0; j < 3; ++j) l[u * 3 + j] = static_cast<std::int8_t>(chi[u]);
    }
    const CslScore s = CslEvaluate(l, 3, chi, 0.1, 77);
    CHECK(s.pairs_sampled);
    CHECK(s.sample_seed == 77);
    CHECK(s.c1_observed == 0.0);
    CHECK(s.c2_observed == 1.0);
  }

  TEST_CASE("sparse cut with x0 = chi: no bad nodes through the window") {
    const int n = 4096;
    const ClusteredGraph g = testing::TwinCliques(n);
    const double lambda3 = 1.0;
    RunOptions o;
    o.delta = 0.5;
    o.rounds = static_cast<std::int64_t>(std::ceil(12.0 * n * std::log(1.0 * n) / lambda3));
    o.observe_every = 4096;
    o.eps = 0.2;
    o.seed = 3;
    o.x0 = testing::ChiVector(g);
    std::vector<RunResult> runs;
    runs.push_back(Run(g, o));
    const double lo = 6.0 * n * std::log(1.0 * n) / lambda3;
    std::int64_t worst = 0;
    for (const SetCount& c : BadSetSeries(runs[0])) {
      if (c.t >= lo) worst = std::max(worst, c.count);
    }
    CHECK(worst <= 3.0 * 0.2 * n);
    CHECK(NonEphemeralWindowPassFraction(runs, n, lambda3, 0.2) == 1.0);
  }

  TEST_CASE("limits of the bad and threshold sets") {
    const ClusteredGraph g = GenerateClusteredRegular(64, 8, 1, 1);
    RunOptions o;
    o.rounds = 5000;
    o.observe_every = 500;
    o.eps = std::numeric_limits<double>::infinity();
    o.eta = -std::numeric_limits<double>::infinity();
    const RunResult r = Run(g, o);
    for (const SetCount& c : BadSetSeries(r)) CHECK(c.count == 0);
    for (const SetCount& c : ThresholdSetSeries(r)) {
      CHECK(c.count == 64);
      CHECK(c.complement == 0);
    }
    RunOptions plain;
    plain.rounds = 10;
    const RunResult p = Run(g, plain);
    CHECK_THROWS_AS(BadSetSeries(p), Error);
    CHECK_THROWS_AS(ThresholdSetSeries(p), Error);
  }

  TEST_CASE("uniformity fraction") {
    const ClusteredGraph g = GenerateClusteredRegular(200, 10, 1, 1);
    const int n = 200;
    const double ln_n = std::log(200.0);
    ActivationSchedule s(g, 5, true);
    while (s.step() < std::ceil(0.6 * 4.0 * n * ln_n)) s.Next();
    // zeta = 1 puts the closeness threshold at 4 > 1, so only the global
    // window conditions matter.
    const auto tau_lo = static_cast<std::int64_t>(std::ceil(2.0 * ln_n));
    const auto tau_end = static_cast<std::int64_t>(std::ceil(4.0 * ln_n + 1.0));
    int first_only = 0;
    for (int u = 0; u < n; ++u) {
      const bool late = s.local_count(u) < tau_lo ||
                        s.LocalToGlobal(u, tau_lo) > 0.4 * 2.0 * n * ln_n;
      const bool ends = s.local_count(u) >= tau_end &&
                        s.LocalToGlobal(u, tau_end) <= 0.6 * 4.0 * n * ln_n;
      first_only += late && ends;
    }
    CHECK(UniformityFraction(s, 2.0, 4.0, 1.0) == doctest::Approx(1.0 * first_only / n));
    CHECK(UniformityFraction(s, 0.0, 4.0, 0.05) == 0.0);
    const double f = UniformityFraction(s, 2.0, 4.0, 0.05);
    CHECK(f >= 0.0);
    CHECK(f <= UniformityFraction(s, 2.0, 4.0, 1.0));
    ActivationSchedule shortened(g, 5, true);
    shortened.Next();
    CHECK_THROWS_AS(UniformityFraction(shortened, 2.0, 4.0, 0.05), Error);
  }

  TEST_CASE("stopping-time coverage") {
    const int T = 10;
    const int n = 100;
    // Midpoint of [3Tn/4, 3Tn/2].
    CHECK(StoppingTimeCoverage(std::vector<std::int64_t>(50, 9 * T * n / 8), T, n) == 1.0);
    CHECK(StoppingTimeCoverage(std::vector<std::int64_t>(50, T * n / 2), T, n) == 0.0);
    CHECK(CoverageIn({1, 2, 3, 4}, 2, 3) == 0.5);
    CHECK(CoverageIn({}, 0, 1) == 0.0);
  }

  TEST_CASE("mean accumulator and median") {
    MeanAccumulator a;
    for (double v : {1.0, 2.0, 3.0, 4.0}) a.Add(v);
    CHECK(a.mean() == doctest::Approx(2.5));
    CHECK(a.variance() == doctest::Approx(5.0 / 3.0));
    CHECK(a.std_error() == doctest::Approx(std::sqrt(5.0 / 12.0)));
    CHECK(Median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(Median({4.0, 1.0, 3.0, 2.0}) == 2.5);
  }
}

}  // namespace
}  // namespace avgsim
