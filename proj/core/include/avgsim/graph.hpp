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
#ifndef AVGSIM_GRAPH_HPP_
#define AVGSIM_GRAPH_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace avgsim {

enum class GraphKind { kClusteredRegular, kSbm };

const char* GraphKindName(GraphKind kind);

struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Two-community graph. Nodes with chi = +1 form V1, chi = -1 form V2.
// Edges are kept canonical: u < v, sorted lexicographically.
class ClusteredGraph {
 public:
  ClusteredGraph() = default;

  // Validates ids, rejects self-loops and duplicates, canonicalizes edges.
  // Throws Error(kInvalidEdge) or Error(kInvalidParams).
  ClusteredGraph(GraphKind kind, int n, int d, int b, std::vector<int> chi,
                 std::vector<Edge> edges);

  GraphKind kind() const { return kind_; }
  int n() const { return n_; }
  int d() const { return d_; }
  int b() const { return b_; }
  std::int64_t m() const { return static_cast<std::int64_t>(edges_.size()); }
  const std::vector<int>& chi() const { return chi_; }
  const std::vector<Edge>& edges() const { return edges_; }

  int degree(int u) const { return offsets_[u + 1] - offsets_[u]; }
  const int* neighbors_begin(int u) const { return adj_.data() + offsets_[u]; }
  const int* neighbors_end(int u) const {
    return adj_.data() + offsets_[u + 1];
  }
  int cross_degree(int u) const;
  bool is_cross(const Edge& e) const { return chi_[e.u] != chi_[e.v]; }
  // Number of edges across the cut.
  std::int64_t cut_size() const;

  // SBM metadata (zero for clustered-regular graphs).
  double sbm_p = 0.0;
  double sbm_q = 0.0;
  // Measured max_u |deg(u) - mean| / mean.
  double beta = 0.0;
  bool connected = true;

 private:
  GraphKind kind_ = GraphKind::kClusteredRegular;
  int n_ = 0;
  int d_ = 0;
  int b_ = 0;
  std::vector<int> chi_;
  std::vector<Edge> edges_;
  std::vector<int> offsets_;
  std::vector<int> adj_;
};

struct SbmParams {
  int n = 0;
  double p = 0.0;
  double q = 0.0;

  double a() const { return p * n; }
  double b_sbm() const { return q * n; }
};

ClusteredGraph GenerateClusteredRegular(int n, int d, int b,
                                        std::uint64_t seed,
                                        int max_retries = 1000);

ClusteredGraph GenerateSbm(const SbmParams& params, std::uint64_t seed);

struct VerificationReport {
  std::vector<std::string> violations;
  int degree_violations = 0;
  int cross_degree_violations = 0;
  bool cross_checked = false;
  bool connected = false;
  bool bipartite = false;
  bool balanced = false;
  double beta = 0.0;

  bool ok() const { return violations.empty(); }
};

VerificationReport VerifyClusteredInvariants(const ClusteredGraph& g);

bool IsConnected(const ClusteredGraph& g);
bool IsBipartite(const ClusteredGraph& g);

// FNV-1a over kind, n, d, b, chi and the canonical edge list.
std::uint64_t Fingerprint(const ClusteredGraph& g);

}  // namespace avgsim

#endif  // AVGSIM_GRAPH_HPP_
