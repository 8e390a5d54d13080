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
#include "avgsim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avgsim/error.hpp"
#include "avgsim/rng.hpp"

namespace avgsim {

const char* GraphKindName(GraphKind kind) {
  switch (kind) {
    case GraphKind::kClusteredRegular:
      return "clustered-regular";
    case GraphKind::kSbm:
      return "sbm";
  }
  return "unknown";
}

ClusteredGraph::ClusteredGraph(GraphKind kind, int n, int d, int b,
                               std::vector<int> chi, std::vector<Edge> edges)
    : kind_(kind), n_(n), d_(d), b_(b), chi_(std::move(chi)) {
  if (n <= 0) throw Error(ErrorKind::kInvalidParams, "n must be positive");
  if (static_cast<int>(chi_.size()) != n) {
    throw Error(ErrorKind::kInvalidParams, "chi length differs from n");
  }
  for (int c : chi_) {
    if (c != 1 && c != -1) {
      throw Error(ErrorKind::kInvalidParams, "chi entries must be +1 or -1");
    }
  }
  for (Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw Error(ErrorKind::kInvalidEdge, "node id out of range");
    }
    if (e.u == e.v) throw Error(ErrorKind::kInvalidEdge, "self-loop");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw Error(ErrorKind::kInvalidEdge, "duplicate edge");
  }
  edges_ = std::move(edges);

  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (int u = 0; u < n; ++u) offsets_[u + 1] += offsets_[u];
  adj_.resize(offsets_[n]);
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[fill[e.u]++] = e.v;
    adj_[fill[e.v]++] = e.u;
  }
}

int ClusteredGraph::cross_degree(int u) const {
  int c = 0;
  for (const int* it = neighbors_begin(u); it != neighbors_end(u); ++it) {
    if (chi_[*it] != chi_[u]) ++c;
  }
  return c;
}

std::int64_t ClusteredGraph::cut_size() const {
  std::int64_t c = 0;
  for (const Edge& e : edges_) c += is_cross(e) ? 1 : 0;
  return c;
}

namespace {

// Sequential stub pairing for a simple k-regular graph on h nodes. Pairs that
// would create a loop or a parallel edge are rejected one at a time; returns
// nullopt when the remaining stubs admit no valid pair.
std::optional<std::vector<Edge>> PairInnerRegular(int h, int k, Rng& rng) {
  std::vector<Edge> out;
  if (k == 0) return out;
  std::vector<int> points;
  points.reserve(static_cast<std::size_t>(h) * k);
  for (int u = 0; u < h; ++u) {
    for (int i = 0; i < k; ++i) points.push_back(u);
  }
  std::vector<char> adjacent(static_cast<std::size_t>(h) * h, 0);
  out.reserve(points.size() / 2);
  int failures = 0;
  while (!points.empty()) {
    const auto size = points.size();
    std::size_t i = rng.Below(size);
    std::size_t j = rng.Below(size - 1);
    if (j >= i) ++j;
    const int a = points[i];
    const int c = points[j];
    if (a != c && !adjacent[static_cast<std::size_t>(a) * h + c]) {
      adjacent[static_cast<std::size_t>(a) * h + c] = 1;
      adjacent[static_cast<std::size_t>(c) * h + a] = 1;
      out.push_back({a, c});
      if (i < j) std::swap(i, j);
      points[i] = points.back();
      points.pop_back();
      points[j] = points.back();
      points.pop_back();
      failures = 0;
      continue;
    }
    if (++failures < 64) continue;
    failures = 0;
    std::vector<int> open(points);
    std::sort(open.begin(), open.end());
    open.erase(std::unique(open.begin(), open.end()), open.end());
    bool feasible = false;
    for (std::size_t x = 0; x < open.size() && !feasible; ++x) {
      for (std::size_t y = x + 1; y < open.size(); ++y) {
        if (!adjacent[static_cast<std::size_t>(open[x]) * h + open[y]]) {
          feasible = true;
          break;
        }
      }
    }
    if (!feasible) return std::nullopt;
  }
  return out;
}

bool Augment(int row, int h, const std::vector<char>& used,
             std::vector<int>& match_col, std::vector<char>& seen,
             const std::vector<int>& order) {
  for (int col : order) {
    if (used[static_cast<std::size_t>(row) * h + col] || seen[col]) continue;
    seen[col] = 1;
    if (match_col[col] < 0 ||
        Augment(match_col[col], h, used, match_col, seen, order)) {
      match_col[col] = row;
      return true;
    }
  }
  return false;
}

// b edge-disjoint perfect matchings between two sides of size h. Each
// matching starts from a random permutation; rows hitting an already used
// pair are re-matched by augmenting paths over the unused pairs, which always
// succeeds because the unused pairs form a regular bipartite graph.
std::vector<std::pair<int, int>> CrossMatchings(int h, int b, Rng& rng) {
  std::vector<char> used(static_cast<std::size_t>(h) * h, 0);
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(h) * b);
  std::vector<int> perm(h);
  for (int r = 0; r < b; ++r) {
    for (int i = 0; i < h; ++i) perm[i] = i;
    for (int i = h - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.Below(static_cast<std::uint64_t>(i) + 1)]);
    }
    std::vector<int> match_col(h, -1);
    std::vector<int> free_rows;
    for (int i = 0; i < h; ++i) {
      if (used[static_cast<std::size_t>(i) * h + perm[i]]) {
        free_rows.push_back(i);
      } else {
        match_col[perm[i]] = i;
      }
    }
    std::vector<int> order(h);
    for (int i = 0; i < h; ++i) order[i] = i;
    for (int row : free_rows) {
      for (int i = h - 1; i > 0; --i) {
        std::swap(order[i],
                  order[rng.Below(static_cast<std::uint64_t>(i) + 1)]);
      }
      std::vector<char> seen(h, 0);
      Augment(row, h, used, match_col, seen, order);
    }
    for (int col = 0; col < h; ++col) {
      const int row = match_col[col];
      if (row < 0) {
        throw Error(ErrorKind::kInvariantBreach, "cross matching incomplete");
      }
      used[static_cast<std::size_t>(row) * h + col] = 1;
      out.emplace_back(row, col);
    }
  }
  return out;
}

std::vector<int> BalancedChi(int n) {
  std::vector<int> chi(n, 1);
  for (int u = n / 2; u < n; ++u) chi[u] = -1;
  return chi;
}

double DegreeSpread(const ClusteredGraph& g) {
  if (g.n() == 0) return 0.0;
  const double mean = 2.0 * static_cast<double>(g.m()) / g.n();
  if (mean == 0.0) return 0.0;
  double worst = 0.0;
  for (int u = 0; u < g.n(); ++u) {
    worst = std::max(worst, std::abs(g.degree(u) - mean) / mean);
  }
  return worst;
}

}  // namespace

ClusteredGraph GenerateClusteredRegular(int n, int d, int b,
                                        std::uint64_t seed, int max_retries) {
  if (n <= 0 || n % 2 != 0) {
    throw Error(ErrorKind::kInvalidParams, "n must be a positive even number");
  }
  if (b < 1) throw Error(ErrorKind::kInvalidParams, "b must be positive");
  if (2 * b >= d || d >= n) {
    throw Error(ErrorKind::kInvalidParams, "need 2b < d < n");
  }
  const int h = n / 2;
  if (b > h) throw Error(ErrorKind::kInvalidParams, "need b <= n/2");
  const int k = d - b;
  if (k > h - 1) {
    throw Error(ErrorKind::kInvalidParams, "need d - b <= n/2 - 1");
  }
  if ((static_cast<std::int64_t>(k) * h) % 2 != 0) {
    throw Error(ErrorKind::kParity, "(d - b) * n/2 must be even");
  }

  Rng rng(DeriveSeed(seed, Stream::kGraph));
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    auto inner1 = PairInnerRegular(h, k, rng);
    if (!inner1) continue;
    auto inner2 = PairInnerRegular(h, k, rng);
    if (!inner2) continue;
    const auto cross = CrossMatchings(h, b, rng);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * d / 2);
    for (const Edge& e : *inner1) edges.push_back({e.u, e.v});
    for (const Edge& e : *inner2) edges.push_back({e.u + h, e.v + h});
    for (const auto& [row, col] : cross) edges.push_back({row, col + h});
    ClusteredGraph g(GraphKind::kClusteredRegular, n, d, b, BalancedChi(n),
                     std::move(edges));
    if (!IsConnected(g) || IsBipartite(g)) continue;
    g.connected = true;
    g.beta = 0.0;
    return g;
  }
  throw Error(ErrorKind::kRetryExhausted,
              "no valid graph after " + std::to_string(max_retries) +
                  " attempts");
}

ClusteredGraph GenerateSbm(const SbmParams& params, std::uint64_t seed) {
  const int n = params.n;
  if (n <= 0 || n % 2 != 0) {
    throw Error(ErrorKind::kInvalidParams, "n must be a positive even number");
  }
  if (!(params.p >= 0.0 && params.p <= 1.0 && params.q >= 0.0 &&
        params.q <= params.p)) {
    throw Error(ErrorKind::kInvalidParams, "need 0 <= q <= p <= 1");
  }
  if (params.p == 0.0) {
    throw Error(ErrorKind::kEmptyGraph, "p = q = 0 yields no edges");
  }
  Rng rng(DeriveSeed(seed, Stream::kGraph));
  const std::vector<int> chi = BalancedChi(n);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double prob = chi[u] == chi[v] ? params.p : params.q;
      if (prob >= 1.0 || (prob > 0.0 && rng.Uniform() < prob)) {
        edges.push_back({u, v});
      }
    }
  }
  if (edges.empty()) throw Error(ErrorKind::kEmptyGraph, "sample has no edges");
  const double mean_degree = 2.0 * static_cast<double>(edges.size()) / n;
  ClusteredGraph probe(GraphKind::kSbm, n, 0, 0, chi, edges);
  const double mean_cross = 2.0 * static_cast<double>(probe.cut_size()) / n;
  ClusteredGraph g(GraphKind::kSbm, n,
                   static_cast<int>(std::lround(mean_degree)),
                   static_cast<int>(std::lround(mean_cross)), chi,
                   std::move(edges));
  g.sbm_p = params.p;
  g.sbm_q = params.q;
  g.beta = DegreeSpread(g);
  g.connected = IsConnected(g);
  return g;
}

bool IsConnected(const ClusteredGraph& g) {
  const int n = g.n();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const int* it = g.neighbors_begin(u); it != g.neighbors_end(u);
         ++it) {
      if (!seen[*it]) {
        seen[*it] = 1;
        ++count;
        stack.push_back(*it);
      }
    }
  }
  return count == n;
}

bool IsBipartite(const ClusteredGraph& g) {
  const int n = g.n();
  std::vector<int> color(n, -1);
  for (int s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const int* it = g.neighbors_begin(u); it != g.neighbors_end(u);
           ++it) {
        if (color[*it] < 0) {
          color[*it] = 1 - color[u];
          stack.push_back(*it);
        } else if (color[*it] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

VerificationReport VerifyClusteredInvariants(const ClusteredGraph& g) {
  VerificationReport r;
  const int n = g.n();
  int plus = 0;
  for (int c : g.chi()) plus += c > 0 ? 1 : 0;
  r.balanced = 2 * plus == n;
  if (!r.balanced) r.violations.push_back("chi is not balanced");
  r.connected = IsConnected(g);
  if (!r.connected) r.violations.push_back("graph is disconnected");
  r.bipartite = IsBipartite(g);
  r.beta = DegreeSpread(g);

  if (g.kind() == GraphKind::kSbm) return r;

  r.cross_checked = true;
  if (r.bipartite) r.violations.push_back("graph is bipartite");
  if (!(2 * g.b() < g.d() && g.d() < n)) {
    r.violations.push_back("parameters violate 2b < d < n");
  }
  if (g.m() != static_cast<std::int64_t>(n) * g.d() / 2) {
    r.violations.push_back("edge count " + std::to_string(g.m()) +
                           " differs from nd/2");
  }
  for (int u = 0; u < n; ++u) {
    if (g.degree(u) != g.d()) {
      ++r.degree_violations;
      r.violations.push_back("node " + std::to_string(u) + " has degree " +
                             std::to_string(g.degree(u)));
    }
    const int c = g.cross_degree(u);
    if (c != g.b()) {
      ++r.cross_degree_violations;
      r.violations.push_back("node " + std::to_string(u) +
                             " has cross degree " + std::to_string(c));
    }
  }
  return r;
}

std::uint64_t Fingerprint(const ClusteredGraph& g) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto feed = [&h](std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      h ^= (value >> (8 * i)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  };
  feed(static_cast<std::uint64_t>(g.kind()));
  feed(static_cast<std::uint64_t>(g.n()));
  feed(static_cast<std::uint64_t>(g.d()));
  feed(static_cast<std::uint64_t>(g.b()));
  for (int c : g.chi()) feed(static_cast<std::uint64_t>(c + 1));
  for (const Edge& e : g.edges()) {
    feed(static_cast<std::uint64_t>(e.u));
    feed(static_cast<std::uint64_t>(e.v));
  }
  return h;
}

}  // namespace avgsim
