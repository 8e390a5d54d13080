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
#include <clocale>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "avgsim/dynamics.hpp"
#include "avgsim/error.hpp"
#include "avgsim/graph.hpp"
#include "avgsim/io.hpp"
#include "avgsim/metrics.hpp"
#include "doctest.h"

namespace avgsim {
namespace {

ErrorKind ParseKind(const std::string& text) {
  try {
    GraphFromJson(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInvariantBreach;
}

TEST_SUITE("io") {
  TEST_CASE("graph JSON round trip") {
    const ClusteredGraph g = GenerateClusteredRegular(32, 6, 1, 3);
    const ClusteredGraph h = GraphFromJson(GraphToJson(g));
    CHECK(h.edges() == g.edges());
    CHECK(h.chi() == g.chi());
    CHECK(Fingerprint(h) == Fingerprint(g));
    CHECK(GraphToJson(h) == GraphToJson(g));
  }

  TEST_CASE("SBM metadata survives the round trip") {
    const ClusteredGraph g = GenerateSbm({120, 0.2, 0.02}, 4);
    const ClusteredGraph h = GraphFromJson(GraphToJson(g));
    CHECK(h.kind() == GraphKind::kSbm);
    CHECK(h.sbm_p == g.sbm_p);
    CHECK(h.sbm_q == g.sbm_q);
    CHECK(h.beta == doctest::Approx(g.beta));
  }

  TEST_CASE("malformed graph files are config errors") {
    CHECK(ParseKind("{broken") == ErrorKind::kConfig);
    CHECK(ParseKind("{}") == ErrorKind::kConfig);
    CHECK(ParseKind(R"({"kind":"torus","n":2,"d":1,"b":1,"chi":[1,-1],"edges":[]})") ==
          ErrorKind::kConfig);
    CHECK(ParseKind(R"({"kind":"clustered-regular","n":2,"d":1,"b":1,"chi":[1,-1],"edges":[[0,0]]})") ==
          ErrorKind::kConfig);
    CHECK(ParseKind(R"({"kind":"clustered-regular","n":2,"d":1,"b":1,"chi":[1,-1],"edges":[[0]]})") ==
          ErrorKind::kConfig);
    CHECK_THROWS_AS(ReadGraphFile("/nonexistent/graph.json"), Error);
  }

  TEST_CASE("file round trip") {
    const ClusteredGraph g = GenerateClusteredRegular(16, 5, 1, 1);
    const std::string path = "io_test_graph.json";
    WriteGraphFile(g, path);
    CHECK(ReadGraphFile(path).edges() == g.edges());
    std::remove(path.c_str());
  }

  TEST_CASE("doubles use 17 significant digits and a dot") {
    CHECK(FormatDouble(0.1) == "0.10000000000000001");
    CHECK(FormatDouble(1.0) == "1");
    for (double v : {-2.5e-300, 1.0 / 3.0, 6.02214076e23}) {
      CHECK(std::strtod(FormatDouble(v).c_str(), nullptr) == v);
    }
    // A comma locale must not leak into the output.
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
      CHECK(FormatDouble(0.5) == "0.5");
      std::setlocale(LC_NUMERIC, "C");
    }
  }

  TEST_CASE("series CSV leaves disabled observers empty") {
    Observation o;
    o.t = 3;
    o.a_par = 0.5;
    o.cross_count = 2;
    std::ostringstream out;
    WriteSeriesCsv(out, {o});
    CHECK(out.str() ==
          "t,a_par,a_y,y_norm_sq,z_norm_sq,bad_count,r_eta_count,cross_count\n"
          "3,0.5,0,0,0,,,2\n");
  }

  TEST_CASE("labels CSV") {
    std::ostringstream out;
    const std::vector<std::int8_t> copies = {1, -1, 1, -1, -1, -1};
    WriteLabelsCsv(out, {1, -1}, {1, -1}, {10, 12}, &copies, 3);
    CHECK(out.str() ==
          "node,chi,label,label_global_time,copy_labels\n"
          "0,1,1,10,1;-1;1\n"
          "1,-1,-1,12,-1;-1;-1\n");
  }

  TEST_CASE("score JSON has nulls for absent parts") {
    ScoreRecord s;
    ReconstructionScore r;
    r.error_fraction = 0.25;
    s.reconstruction = r;
    const std::string j = ScoreToJson(s);
    CHECK(j.find("\"error_fraction\": 0.25") != std::string::npos);
    CHECK(j.find("\"gamma\": null") != std::string::npos);
    CHECK(j.find("\"window_pass_fraction\": null") != std::string::npos);
  }

  TEST_CASE("oracle CSV") {
    std::ostringstream out;
    WriteOracleCsv(out, {{10, 1.0, 0.5, 0.25, 2.0, true}});
    CHECK(out.str() ==
          "t,predicted,empirical_mean,std_error,bound,holds\n"
          "10,1,0.5,0.25,2,true\n");
  }

  TEST_CASE("version string") { CHECK(std::string(Version()) == "0.1.0"); }
}

}  // namespace
}  // namespace avgsim
