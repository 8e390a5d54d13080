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
#ifndef AVGSIM_TESTS_TEST_UTIL_HPP_
#define AVGSIM_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <vector>

#include "avgsim/graph.hpp"

namespace avgsim::testing {

// Dense row-major helpers used as reference implementations.
inline std::vector<double> DenseAdjacency(const ClusteredGraph& g) {
  const int n = g.n();
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (const Edge& e : g.edges()) {
    a[static_cast<std::size_t>(e.u) * n + e.v] = 1.0;
    a[static_cast<std::size_t>(e.v) * n + e.u] = 1.0;
  }
  return a;
}

inline std::vector<double> MatVec(const std::vector<double>& a,
                                  const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * x[j];
    y[i] = s;
  }
  return y;
}

inline double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::vector<double> ChiVector(const ClusteredGraph& g) {
  return {g.chi().begin(), g.chi().end()};
}

// Two copies of K_{n/2} joined by the matching u <-> u + n/2. This is an
// (n, n/2, 1) clustered-regular graph with lambda3 = 1.
inline ClusteredGraph TwinCliques(int n) {
  const int h = n / 2;
  std::vector<int> chi(n);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) chi[u] = u < h ? 1 : -1;
  for (int side = 0; side < 2; ++side) {
    for (int u = 0; u < h; ++u) {
      for (int v = u + 1; v < h; ++v) edges.push_back({side * h + u, side * h + v});
    }
  }
  for (int u = 0; u < h; ++u) edges.push_back({u, u + h});
  return ClusteredGraph(GraphKind::kClusteredRegular, n, h, 1, chi, edges);
}

}  // namespace avgsim::testing

#endif  // AVGSIM_TESTS_TEST_UTIL_HPP_
