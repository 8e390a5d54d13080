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
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <vector>

#include "avgsim/parallel.hpp"
#include "avgsim/rng.hpp"
#include "doctest.h"

namespace avgsim {
namespace {

TEST_SUITE("rng") {
  TEST_CASE("seeding follows splitmix64") {
    // First splitmix64 output for seed 0.
    CHECK(Mix64(kSeedSplitConstant) == 0xE220A8397B1DCDAFULL);
  }

  TEST_CASE("same seed, same stream") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.Next() == b.Next());
  }

  TEST_CASE("derived seeds are distinct across indices and streams") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(DeriveSeed(7, i));
    seen.insert(DeriveSeed(7, Stream::kState));
    seen.insert(DeriveSeed(7, Stream::kEdges));
    seen.insert(DeriveSeed(7, Stream::kTau));
    CHECK(seen.size() == 1003);
    CHECK(DeriveSeed(7, 0) != DeriveSeed(8, 0));
  }

  TEST_CASE("Below stays in range and is roughly uniform") {
    Rng r(1);
    std::vector<int> counts(7, 0);
    constexpr int kDraws = 70000;
    for (int i = 0; i < kDraws; ++i) {
      const auto v = r.Below(7);
      REQUIRE(v < 7);
      ++counts[v];
    }
    for (int c : counts) CHECK(std::abs(c - kDraws / 7) < 500);
    CHECK(r.Below(1) == 0);
  }

  TEST_CASE("Between, Uniform and Sign ranges") {
    Rng r(3);
    int plus = 0;
    for (int i = 0; i < 10000; ++i) {
      const auto v = r.Between(-2, 2);
      CHECK(v >= -2);
      CHECK(v <= 2);
      const double u = r.Uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
      const int s = r.Sign();
      CHECK((s == 1 || s == -1));
      plus += s > 0;
    }
    CHECK(std::abs(plus - 5000) < 300);
  }
}

TEST_SUITE("parallel") {
  TEST_CASE("every index runs exactly once") {
    std::vector<int> hits(1000, 0);
    ParallelFor(1000, [&](std::int64_t i) { ++hits[i]; }, 4);
    for (int h : hits) CHECK(h == 1);
  }

  TEST_CASE("first exception propagates") {
    CHECK_THROWS_AS(ParallelFor(
                        10,
                        [](std::int64_t i) {
                          if (i == 3) throw std::runtime_error("boom");
                        },
                        3),
                    std::runtime_error);
  }

  TEST_CASE("AVGSIM_THREADS overrides the worker count") {
    ::setenv("AVGSIM_THREADS", "3", 1);
    CHECK(WorkerCount() == 3);
    ::setenv("AVGSIM_THREADS", "junk", 1);
    CHECK(WorkerCount() >= 1);
    ::unsetenv("AVGSIM_THREADS");
    CHECK(WorkerCount() >= 1);
  }
}

}  // namespace
}  // namespace avgsim
