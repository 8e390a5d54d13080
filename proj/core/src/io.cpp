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
#include "avgsim/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "avgsim/error.hpp"
#include "json.hpp"

namespace avgsim {

using nlohmann::json;

const char* Version() { return AVGSIM_VERSION; }

std::string FormatDouble(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string GraphToJson(const ClusteredGraph& g) {
  json j;
  j["kind"] = GraphKindName(g.kind());
  j["n"] = g.n();
  j["d"] = g.d();
  j["b"] = g.b();
  if (g.kind() == GraphKind::kSbm) {
    j["p"] = g.sbm_p;
    j["q"] = g.sbm_q;
    j["beta"] = g.beta;
  }
  j["chi"] = g.chi();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  return j.dump() + "\n";
}

ClusteredGraph GraphFromJson(const std::string& text) {
  try {
    const json j = json::parse(text);
    const std::string kind_name = j.at("kind").get<std::string>();
    GraphKind kind;
    if (kind_name == GraphKindName(GraphKind::kClusteredRegular)) {
      kind = GraphKind::kClusteredRegular;
    } else if (kind_name == GraphKindName(GraphKind::kSbm)) {
      kind = GraphKind::kSbm;
    } else {
      throw Error(ErrorKind::kConfig, "unknown graph kind '" + kind_name + "'");
    }
    const int n = j.at("n").get<int>();
    const int d = j.at("d").get<int>();
    const int b = j.at("b").get<int>();
    auto chi = j.at("chi").get<std::vector<int>>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw Error(ErrorKind::kConfig, "edge entries must be [u, v] pairs");
      }
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    ClusteredGraph g(kind, n, d, b, std::move(chi), std::move(edges));
    if (kind == GraphKind::kSbm) {
      g.sbm_p = j.value("p", 0.0);
      g.sbm_q = j.value("q", 0.0);
    }
    const double mean = g.n() > 0 ? 2.0 * static_cast<double>(g.m()) / g.n() : 0;
    g.beta = 0.0;
    for (int u = 0; u < g.n() && mean > 0; ++u) {
      g.beta = std::max(g.beta, std::abs(g.degree(u) - mean) / mean);
    }
    g.connected = IsConnected(g);
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("malformed graph JSON: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kConfig) throw;
    throw Error(ErrorKind::kConfig, std::string("invalid graph: ") + e.what());
  }
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kConfig, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kConfig, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::kConfig, "write failed for '" + path + "'");
}

void WriteGraphFile(const ClusteredGraph& g, const std::string& path) {
  WriteTextFile(path, GraphToJson(g));
}

ClusteredGraph ReadGraphFile(const std::string& path) {
  return GraphFromJson(ReadTextFile(path));
}

std::string SpectrumToJson(const GraphSpectrum& spec) {
  json j;
  j["lambdas"] = spec.lambdas;
  j["wbar_lambdas"] = spec.wbar_lambdas;
  j["f_perp_norm_sq"] = spec.f_perp_norm_sq;
  j["m12"] = spec.m12;
  return j.dump() + "\n";
}

void WriteSeriesCsv(std::ostream& out, const std::vector<Observation>& series) {
  out << "t,a_par,a_y,y_norm_sq,z_norm_sq,bad_count,r_eta_count,cross_count\n";
  for (const auto& o : series) {
    out << o.t << ',' << FormatDouble(o.a_par) << ',' << FormatDouble(o.a_y)
        << ',' << FormatDouble(o.y_norm_sq) << ','
        << FormatDouble(o.z_norm_sq) << ',';
    if (o.bad_count >= 0) out << o.bad_count;
    out << ',';
    if (o.r_eta_count >= 0) out << o.r_eta_count;
    out << ',' << o.cross_count << '\n';
  }
}

void WriteLabelsCsv(std::ostream& out, const std::vector<int>& chi,
                    const std::vector<std::int8_t>& labels,
                    const std::vector<std::int64_t>& label_times,
                    const std::vector<std::int8_t>* copy_labels, int ell) {
  out << "node,chi,label,label_global_time,copy_labels\n";
  for (std::size_t u = 0; u < chi.size(); ++u) {
    out << u << ',' << chi[u] << ',' << static_cast<int>(labels[u]) << ','
        << label_times[u] << ',';
    if (copy_labels != nullptr) {
      for (int j = 0; j < ell; ++j) {
        if (j > 0) out << ';';
        out << static_cast<int>((*copy_labels)[u * ell + j]);
      }
    }
    out << '\n';
  }
}

void WriteOracleCsv(std::ostream& out, const std::vector<OracleRow>& rows) {
  out << "t,predicted,empirical_mean,std_error,bound,holds\n";
  for (const auto& r : rows) {
    out << r.t << ',' << FormatDouble(r.predicted) << ','
        << FormatDouble(r.empirical_mean) << ',' << FormatDouble(r.std_error)
        << ',' << FormatDouble(r.bound) << ',' << (r.holds ? "true" : "false")
        << '\n';
  }
}

std::string ScoreToJson(const ScoreRecord& score) {
  json j;
  j["error_fraction"] = nullptr;
  j["flip_used"] = nullptr;
  j["gamma"] = nullptr;
  j["c1_observed"] = nullptr;
  j["c2_observed"] = nullptr;
  j["window_pass_fraction"] = nullptr;
  if (score.reconstruction) {
    j["error_fraction"] = score.reconstruction->error_fraction;
    j["flip_used"] = score.reconstruction->flip_used;
  }
  if (score.csl) {
    j["gamma"] = score.csl->gamma;
    j["c1_observed"] = score.csl->c1_observed;
    j["c2_observed"] = score.csl->c2_observed;
  }
  if (score.window_pass_fraction) {
    j["window_pass_fraction"] = *score.window_pass_fraction;
  }
  return j.dump(2) + "\n";
}

}  // namespace avgsim
