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
// avgsim command-line driver: gen-graph, spectrum, run, verify, sweep.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "avgsim/dynamics.hpp"
#include "avgsim/error.hpp"
#include "avgsim/graph.hpp"
#include "avgsim/io.hpp"
#include "avgsim/metrics.hpp"
#include "avgsim/parallel.hpp"
#include "avgsim/protocols.hpp"
#include "avgsim/rng.hpp"
#include "avgsim/spectral.hpp"
#include "avgsim_tools/acceptance.hpp"
#include "json.hpp"

namespace avgsim {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitGeneration = 3;
constexpr int kExitInvariant = 4;

// Conservation budget for the running sum, per 10^6 steps.
constexpr double kSumDriftPerMillion = 1e-12;

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kRetryExhausted:
    case ErrorKind::kEmptyGraph:
      return kExitGeneration;
    case ErrorKind::kInvariantBreach:
    case ErrorKind::kNotConverged:
    case ErrorKind::kNotYetReached:
    case ErrorKind::kMissingObserver:
    case ErrorKind::kScheduleTooShort:
      return kExitInvariant;
    default:
      return kExitConfig;
  }
}

std::string Hex(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void PrintSpectrumSummary(const GraphSpectrum& s) {
  std::printf("λ2=%.4f λ3=%.4f wbar_gap=%.6g m12=%lld\n", s.lambda2(),
              s.lambda3(), s.wbar2() - s.wbar3(),
              static_cast<long long>(s.m12));
}

void PrintVerification(const ClusteredGraph& g) {
  const VerificationReport v = VerifyClusteredInvariants(g);
  std::printf("graph kind=%s n=%d d=%d b=%d m=%lld fingerprint=%s\n",
              GraphKindName(g.kind()), g.n(), g.d(), g.b(),
              static_cast<long long>(g.m()), Hex(Fingerprint(g)).c_str());
  if (g.kind() == GraphKind::kSbm) {
    std::printf("beta=%.4f connected=%s p=%g q=%g\n", g.beta,
                g.connected ? "yes" : "no", g.sbm_p, g.sbm_q);
    return;
  }
  std::printf("invariants: %s (degree_violations=%d cross_violations=%d "
              "connected=%s bipartite=%s)\n",
              v.ok() ? "ok" : "VIOLATED", v.degree_violations,
              v.cross_degree_violations, v.connected ? "yes" : "no",
              v.bipartite ? "yes" : "no");
  for (const std::string& s : v.violations) std::printf("  %s\n", s.c_str());
}

// ---------------------------------------------------------------- gen-graph

struct GenArgs {
  int n = 0;
  int d = 0;
  int b = 0;
  std::uint64_t seed = 0;
  int max_retries = 1000;
  bool sbm = false;
  double p = 0.0;
  double q = 0.0;
  std::string out;
  bool no_spectrum = false;
};

int CmdGenGraph(const GenArgs& a) {
  ClusteredGraph g;
  if (a.sbm) {
    g = GenerateSbm({a.n, a.p, a.q}, a.seed);
  } else {
    g = GenerateClusteredRegular(a.n, a.d, a.b, a.seed, a.max_retries);
  }
  WriteGraphFile(g, a.out);
  std::printf("wrote %s\n", a.out.c_str());
  PrintVerification(g);
  if (!a.no_spectrum) PrintSpectrumSummary(ComputeSpectrum(g));
  return kExitOk;
}

// ----------------------------------------------------------------- spectrum

struct SpectrumArgs {
  std::string graph;
  std::string out;
  std::string backend = "eigen";
  double tol = 1e-10;
};

int CmdSpectrum(const SpectrumArgs& a) {
  const ClusteredGraph g = ReadGraphFile(a.graph);
  const EigenBackend backend =
      a.backend == "jacobi" ? EigenBackend::kJacobi : EigenBackend::kEigen;
  const GraphSpectrum s = ComputeSpectrum(g, a.tol, backend);
  PrintSpectrumSummary(s);
  std::printf("f_perp_norm_sq=%.3e lambda_perp_min=%.6f\n", s.f_perp_norm_sq,
              s.lambda_perp_min);
  if (!a.out.empty()) WriteTextFile(a.out, SpectrumToJson(s));
  return kExitOk;
}

// ---------------------------------------------------------------------- run

// Every field maps to the flag of the same name; config.json uses the same
// keys, so an echoed config can be fed back through --config.
struct RunArgs {
  std::string graph;
  int n = 0;
  int d = 0;
  int b = 0;
  std::uint64_t graph_seed = 0;
  std::string protocol = "averaging";
  double delta = 0.5;
  std::int64_t rounds = 0;
  int trials = 1;
  std::uint64_t seed = 0;
  std::int64_t observe_every = 1;
  std::optional<double> eps;
  std::optional<double> eta;
  bool track_chi = false;
  bool all_auto = false;
  std::string T = "auto";
  std::string ell = "auto";
  std::string tau_s = "auto";
  std::string tau_s_max = "auto";
  std::string tau_e = "auto";
  std::string tau_e_max = "auto";
  std::string out = "avgsim_out";
};

std::int64_t ParseCount(const std::string& name, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorKind::kConfig, name + " must be an integer or 'auto'");
  }
}

bool IsAuto(const RunArgs& a, const std::string& v) {
  return a.all_auto || v == "auto";
}

ClusteredGraph LoadRunGraph(const RunArgs& a) {
  if (!a.graph.empty()) return ReadGraphFile(a.graph);
  if (a.n <= 0) {
    throw Error(ErrorKind::kConfig, "either --graph or --n/--d/--b is required");
  }
  return GenerateClusteredRegular(a.n, a.d, a.b, a.graph_seed);
}

struct Resolved {
  JumpConfig jump;
  int T = 0;
  int ell = 0;
};

Resolved ResolveProtocol(const RunArgs& a, const ClusteredGraph& g,
                         const std::optional<GraphSpectrum>& spec) {
  Resolved r;
  if (a.protocol == "jump" || a.protocol == "jump-boosted") {
    if (IsAuto(a, a.tau_s) || IsAuto(a, a.tau_s_max) || IsAuto(a, a.tau_e) ||
        IsAuto(a, a.tau_e_max)) {
      r.jump = JumpDefaultParameters(g, *spec, a.delta);
    }
    r.jump.delta = a.delta;
    if (!IsAuto(a, a.tau_s)) r.jump.tau_s = ParseCount("tau_s", a.tau_s);
    if (!IsAuto(a, a.tau_s_max)) {
      r.jump.tau_s_max = ParseCount("tau_s_max", a.tau_s_max);
    }
    if (!IsAuto(a, a.tau_e)) r.jump.tau_e = ParseCount("tau_e", a.tau_e);
    if (!IsAuto(a, a.tau_e_max)) {
      r.jump.tau_e_max = ParseCount("tau_e_max", a.tau_e_max);
    }
    ValidateJumpConfig(r.jump);
    if (a.protocol == "jump-boosted") {
      // Boosting size has no spectral default; 11 copies unless given.
      r.ell = IsAuto(a, a.ell) ? 11 : static_cast<int>(ParseCount("ell", a.ell));
      if (r.ell < 1 || r.ell % 2 == 0) {
        throw Error(ErrorKind::kConfig, "ell must be odd and positive");
      }
    }
  } else if (a.protocol == "sign") {
    const double eps = a.eps.value_or(0.2);
    SignDefaults def;
    if (IsAuto(a, a.T) || IsAuto(a, a.ell)) {
      def = SignDefaultParameters(g.n(), spec->lambda3(), eps);
    }
    r.T = IsAuto(a, a.T) ? def.T : static_cast<int>(ParseCount("T", a.T));
    r.ell = IsAuto(a, a.ell) ? def.ell : static_cast<int>(ParseCount("ell", a.ell));
    if (r.T < 1 || r.ell < 1) {
      throw Error(ErrorKind::kConfig, "T and ell must be positive");
    }
  } else if (a.protocol != "averaging") {
    throw Error(ErrorKind::kConfig, "unknown protocol '" + a.protocol + "'");
  }
  return r;
}

Json ConfigEcho(const RunArgs& a, const Resolved& r) {
  Json j;
  if (!a.graph.empty()) {
    j["graph"] = a.graph;
  } else {
    j["n"] = a.n;
    j["d"] = a.d;
    j["b"] = a.b;
    j["graph_seed"] = a.graph_seed;
  }
  j["protocol"] = a.protocol;
  j["delta"] = a.delta;
  j["trials"] = a.trials;
  j["seed"] = a.seed;
  if (a.protocol == "averaging") {
    j["rounds"] = a.rounds;
    j["observe_every"] = a.observe_every;
    if (a.eps) j["eps"] = *a.eps;
    if (a.eta) j["eta"] = *a.eta;
    j["track_chi"] = a.track_chi;
  } else if (a.protocol == "sign") {
    if (a.eps) j["eps"] = *a.eps;
    j["T"] = std::to_string(r.T);
    j["ell"] = std::to_string(r.ell);
  } else {
    j["tau_s"] = std::to_string(r.jump.tau_s);
    j["tau_s_max"] = std::to_string(r.jump.tau_s_max);
    j["tau_e"] = std::to_string(r.jump.tau_e);
    j["tau_e_max"] = std::to_string(r.jump.tau_e_max);
    if (a.protocol == "jump-boosted") j["ell"] = std::to_string(r.ell);
  }
  return j;
}

Json Summary(std::vector<double> v) {
  Json j;
  if (v.empty()) return j;
  MeanAccumulator acc;
  for (double x : v) acc.Add(x);
  std::sort(v.begin(), v.end());
  j["mean"] = acc.mean();
  j["std_error"] = acc.std_error();
  j["min"] = v.front();
  j["median"] = Median(v);
  j["max"] = v.back();
  return j;
}

std::string TrialFile(const std::string& dir, const char* stem, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%04d.csv", stem, i);
  return (std::filesystem::path(dir) / buf).string();
}

int CmdRun(const RunArgs& a) {
  if (a.trials < 1) throw Error(ErrorKind::kConfig, "trials must be >= 1");
  if (!(a.delta > 0.0 && a.delta < 1.0)) {
    throw Error(ErrorKind::kConfig, "delta must lie in (0, 1)");
  }
  const ClusteredGraph g = LoadRunGraph(a);
  const bool needs_spectrum =
      a.protocol != "averaging" || a.eps.has_value();
  std::optional<GraphSpectrum> spec;
  if (needs_spectrum) spec = ComputeSpectrum(g);
  const Resolved res = ResolveProtocol(a, g, spec);

  std::filesystem::create_directories(a.out);
  const Json echo = ConfigEcho(a, res);
  WriteTextFile((std::filesystem::path(a.out) / "config.json").string(),
                echo.dump(2) + "\n");

  const auto start = std::chrono::steady_clock::now();
  std::vector<Json> trial_json(a.trials);
  std::vector<double> trial_seconds(a.trials);
  std::vector<RunResult> averaging_runs(
      a.protocol == "averaging" && a.eps ? a.trials : 0);
  ParallelFor(a.trials, [&](std::int64_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t seed = DeriveSeed(a.seed, static_cast<std::uint64_t>(i));
    Json t;
    t["index"] = i;
    t["seed"] = seed;
    ScoreRecord score;
    if (a.protocol == "averaging") {
      RunOptions ro;
      ro.delta = a.delta;
      ro.rounds = a.rounds;
      ro.seed = seed;
      ro.observe_every = a.observe_every;
      ro.eps = a.eps;
      ro.eta = a.eta;
      ro.track_chi = a.track_chi;
      RunResult run = Run(g, ro);
      std::ofstream csv(TrialFile(a.out, "series", static_cast<int>(i)),
                        std::ios::binary);
      WriteSeriesCsv(csv, run.series);
      double s0 = 0.0;
      double s1 = 0.0;
      double mag = 0.0;
      for (int u = 0; u < g.n(); ++u) {
        s0 += run.x0[u];
        s1 += run.x_final[u];
        mag = std::max(mag, std::abs(run.x0[u]));
      }
      const double budget = kSumDriftPerMillion * std::max(1.0, mag) *
                            std::max(1.0, a.rounds / 1e6);
      t["sum_drift"] = std::abs(s1 - s0);
      if (std::abs(s1 - s0) > budget) {
        throw Error(ErrorKind::kInvariantBreach,
                    "sum drift " + FormatDouble(std::abs(s1 - s0)) +
                        " exceeds budget " + FormatDouble(budget));
      }
      if (a.track_chi) {
        t["chi_claim_worst_excess"] = run.chi_claim_worst_excess;
        if (run.chi_claim_worst_excess > 1e-9) {
          throw Error(ErrorKind::kInvariantBreach,
                      "cross-edge drift bound violated");
        }
      }
      const Observation& last = run.series.back();
      t["final"] = {{"t", last.t},
                    {"a_y", last.a_y},
                    {"y_norm_sq", last.y_norm_sq},
                    {"z_norm_sq", last.z_norm_sq},
                    {"cross_count", last.cross_count}};
      if (!averaging_runs.empty()) averaging_runs[i] = std::move(run);
    } else if (a.protocol == "sign") {
      const SignLabelingResult r = SignLabelingRun(g, res.T, res.ell, seed);
      score.csl = CslEvaluate(r.labels, res.ell, g.chi(), a.eps.value_or(0.2),
                              DeriveSeed(seed, Stream::kPairs));
      t["total_rounds"] = r.total_rounds;
      t["freeze_coverage"] =
          StoppingTimeCoverage(r.freeze_component_times, res.T, g.n());
      // Per-node label of component 0 plus the full signature.
      std::vector<std::int8_t> first(g.n());
      std::vector<std::int64_t> last_freeze(g.n(), 0);
      for (int u = 0; u < g.n(); ++u) {
        first[u] = static_cast<std::int8_t>(r.label(u, 0));
        for (int j = 0; j < res.ell; ++j) {
          last_freeze[u] = std::max(
              last_freeze[u], r.freeze_times[static_cast<std::size_t>(u) * res.ell + j]);
        }
      }
      std::ofstream csv(TrialFile(a.out, "labels", static_cast<int>(i)),
                        std::ios::binary);
      WriteLabelsCsv(csv, g.chi(), first, last_freeze, &r.labels, res.ell);
    } else if (a.protocol == "jump") {
      const JumpLabelingResult r = JumpLabelingRun(g, res.jump, seed);
      score.reconstruction = WeakReconstructionError(r.labels, g.chi());
      t["total_rounds"] = r.total_rounds;
      std::ofstream csv(TrialFile(a.out, "labels", static_cast<int>(i)),
                        std::ios::binary);
      WriteLabelsCsv(csv, g.chi(), r.labels, r.label_times);
    } else {
      const BoostedJumpResult r = BoostedJumpRun(g, res.jump, res.ell, seed);
      score.reconstruction = WeakReconstructionError(r.labels, g.chi());
      t["total_rounds"] = r.total_rounds;
      std::ofstream csv(TrialFile(a.out, "labels", static_cast<int>(i)),
                        std::ios::binary);
      WriteLabelsCsv(csv, g.chi(), r.labels, r.label_times, &r.copy_labels,
                     res.ell);
    }
    if (score.reconstruction || score.csl) {
      t["score"] = Json::parse(ScoreToJson(score));
    }
    trial_json[i] = std::move(t);
    trial_seconds[i] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  });

  Json report;
  report["version"] = Version();
  report["config"] = echo;
  report["graph"] = {{"kind", GraphKindName(g.kind())},
                     {"n", g.n()},
                     {"d", g.d()},
                     {"b", g.b()},
                     {"m", g.m()},
                     {"fingerprint", Hex(Fingerprint(g))}};
  if (spec) {
    report["spectrum"] = {{"lambda2", spec->lambda2()},
                          {"lambda3", spec->lambda3()},
                          {"wbar_gap", spec->wbar2() - spec->wbar3()},
                          {"m12", spec->m12}};
  }
  report["trials"] = trial_json;
  std::vector<double> errors;
  std::vector<double> gammas;
  for (const Json& t : trial_json) {
    if (t.contains("score")) {
      const Json& s = t["score"];
      if (!s["error_fraction"].is_null()) errors.push_back(s["error_fraction"]);
      if (!s["gamma"].is_null()) gammas.push_back(s["gamma"]);
    }
  }
  Json summary;
  if (!errors.empty()) summary["error_fraction"] = Summary(errors);
  if (!gammas.empty()) summary["gamma"] = Summary(gammas);
  if (!averaging_runs.empty()) {
    ScoreRecord w;
    w.window_pass_fraction = NonEphemeralWindowPassFraction(
        averaging_runs, g.n(), spec->lambda3(), *a.eps);
    summary["window_pass_fraction"] = *w.window_pass_fraction;
  }
  report["summary"] = summary;
  WriteTextFile((std::filesystem::path(a.out) / "report.json").string(),
                report.dump(2) + "\n");

  // Wall-clock data lives apart from the report so reports stay
  // byte-identical across repeated runs.
  Json timings;
  timings["total_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  timings["trial_seconds"] = trial_seconds;
  timings["workers"] = WorkerCount();
  WriteTextFile((std::filesystem::path(a.out) / "timings.json").string(),
                timings.dump(2) + "\n");

  std::printf("wrote %s/report.json (%d trials)\n", a.out.c_str(), a.trials);
  if (!errors.empty()) {
    std::printf("error_fraction median=%.4f max=%.4f\n", Median(errors),
                *std::max_element(errors.begin(), errors.end()));
  }
  if (!gammas.empty()) std::printf("gamma median=%.4f\n", Median(gammas));
  return kExitOk;
}

// Applies keys of a JSON config to options the command line left unset.
void ApplyJsonConfig(CLI::App& sub, const std::string& path) {
  Json j;
  try {
    j = Json::parse(ReadTextFile(path));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kConfig, path + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::kConfig, path + ": not an object");
  for (const auto& [key, value] : j.items()) {
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw Error(ErrorKind::kConfig, path + ": unknown key '" + key + "'");
    }
    if (opt->count() > 0) continue;
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_boolean()) {
      text = value.get<bool>() ? "true" : "false";
    } else if (value.is_number()) {
      text = value.dump();
    } else {
      throw Error(ErrorKind::kConfig, path + ": bad value for '" + key + "'");
    }
    opt->add_result(text);
    opt->run_callback();
  }
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
  bool quick = false;
  bool full = false;
  std::vector<int> only;
  std::string graph;
  std::uint64_t seed = acceptance::SuiteOptions{}.seed;
};

int CmdVerify(const VerifyArgs& a) {
  bool ok = true;
  if (!a.graph.empty()) {
    const ClusteredGraph g = ReadGraphFile(a.graph);
    PrintVerification(g);
    if (g.kind() == GraphKind::kClusteredRegular) {
      ok = VerifyClusteredInvariants(g).ok();
    }
    if (!a.quick && !a.full && a.only.empty()) {
      return ok ? kExitOk : kExitVerifyFailed;
    }
  }
  acceptance::SuiteOptions opts;
  opts.seed = a.seed;
  const bool quick = a.quick && !a.full;
  ok = acceptance::RunSuite(a.only, quick, opts, std::cout) && ok;
  return ok ? kExitOk : kExitVerifyFailed;
}

// -------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string graph;
  std::string protocol = "jump";
  std::vector<double> deltas;
  int trials = 10;
  std::uint64_t seed = 0;
  std::int64_t rounds = 10000;
  std::string out;
};

int CmdSweep(const SweepArgs& a) {
  if (a.deltas.empty()) throw Error(ErrorKind::kConfig, "--deltas is empty");
  if (a.trials < 1) throw Error(ErrorKind::kConfig, "trials must be >= 1");
  const ClusteredGraph g = ReadGraphFile(a.graph);
  std::ostringstream csv;
  std::optional<GraphSpectrum> spec;
  if (a.protocol == "jump") {
    spec = ComputeSpectrum(g);
    csv << "delta,trials,mean_error,median_error,max_error,mean_rounds\n";
  } else if (a.protocol == "averaging") {
    csv << "delta,trials,rounds,mean_y_norm_sq,mean_z_norm_sq\n";
  } else {
    throw Error(ErrorKind::kConfig, "sweep supports jump and averaging");
  }
  for (std::size_t k = 0; k < a.deltas.size(); ++k) {
    const double delta = a.deltas[k];
    const std::uint64_t base = DeriveSeed(a.seed, static_cast<std::uint64_t>(k));
    std::vector<double> v1(a.trials);
    std::vector<double> v2(a.trials);
    if (a.protocol == "jump") {
      const JumpConfig cfg = JumpDefaultParameters(g, *spec, delta);
      ParallelFor(a.trials, [&](std::int64_t i) {
        const auto r = JumpLabelingRun(g, cfg, DeriveSeed(base, i));
        v1[i] = WeakReconstructionError(r.labels, g.chi()).error_fraction;
        v2[i] = static_cast<double>(r.total_rounds);
      });
      MeanAccumulator e;
      MeanAccumulator rounds;
      for (int i = 0; i < a.trials; ++i) {
        e.Add(v1[i]);
        rounds.Add(v2[i]);
      }
      csv << FormatDouble(delta) << ',' << a.trials << ','
          << FormatDouble(e.mean()) << ',' << FormatDouble(Median(v1)) << ','
          << FormatDouble(*std::max_element(v1.begin(), v1.end())) << ','
          << FormatDouble(rounds.mean()) << '\n';
    } else {
      ParallelFor(a.trials, [&](std::int64_t i) {
        RunOptions ro;
        ro.delta = delta;
        ro.rounds = a.rounds;
        ro.seed = DeriveSeed(base, i);
        ro.observe_every = std::max<std::int64_t>(1, a.rounds);
        const RunResult r = Run(g, ro);
        v1[i] = r.series.back().y_norm_sq;
        v2[i] = r.series.back().z_norm_sq;
      });
      MeanAccumulator y;
      MeanAccumulator z;
      for (int i = 0; i < a.trials; ++i) {
        y.Add(v1[i]);
        z.Add(v2[i]);
      }
      csv << FormatDouble(delta) << ',' << a.trials << ',' << a.rounds << ','
          << FormatDouble(y.mean()) << ',' << FormatDouble(z.mean()) << '\n';
    }
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    WriteTextFile(a.out, csv.str());
    std::printf("wrote %s\n", a.out.c_str());
  }
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Averaging dynamics and community labeling simulator"};
  app.set_version_flag("--version", std::string(Version()));
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-graph", "Generate a graph file");
  gen_cmd->add_option("--n", gen.n, "Number of nodes")->required();
  gen_cmd->add_option("--d", gen.d, "Degree");
  gen_cmd->add_option("--b", gen.b, "Cross-cut degree");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--max-retries", gen.max_retries, "Generation attempts");
  gen_cmd->add_flag("--sbm", gen.sbm, "Stochastic block model instead");
  gen_cmd->add_option("--p", gen.p, "SBM intra-community probability");
  gen_cmd->add_option("--q", gen.q, "SBM cross-community probability");
  gen_cmd->add_option("--out", gen.out, "Output path")->default_val("graph.json");
  gen_cmd->add_flag("--no-spectrum", gen.no_spectrum, "Skip the spectrum");

  SpectrumArgs sp;
  auto* sp_cmd = app.add_subcommand("spectrum", "Spectrum of a graph file");
  sp_cmd->add_option("--graph", sp.graph, "Graph file")->required();
  sp_cmd->add_option("--out", sp.out, "Write spectrum JSON here");
  sp_cmd->add_option("--backend", sp.backend, "eigen or jacobi")
      ->check(CLI::IsMember({"eigen", "jacobi"}));
  sp_cmd->add_option("--tol", sp.tol, "Eigensolver tolerance");

  RunArgs run;
  std::string run_config;
  auto* run_cmd = app.add_subcommand("run", "Run trials of a protocol");
  run_cmd->add_option("--config", run_config, "JSON config; flags override");
  run_cmd->add_option("--graph", run.graph, "Graph file");
  run_cmd->add_option("--n", run.n, "Generate: nodes");
  run_cmd->add_option("--d", run.d, "Generate: degree");
  run_cmd->add_option("--b", run.b, "Generate: cross degree");
  run_cmd->add_option("--graph_seed", run.graph_seed, "Generate: seed");
  run_cmd->add_option("--protocol", run.protocol)
      ->check(CLI::IsMember({"averaging", "sign", "jump", "jump-boosted"}));
  run_cmd->add_option("--delta", run.delta, "Averaging weight");
  run_cmd->add_option("--rounds", run.rounds, "Averaging rounds");
  run_cmd->add_option("--trials", run.trials, "Independent trials");
  run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--observe_every", run.observe_every);
  run_cmd->add_option("--eps", run.eps, "Accuracy parameter");
  run_cmd->add_option("--eta", run.eta, "Threshold-set parameter");
  run_cmd->add_option("--track_chi", run.track_chi,
                      "Co-evolve chi and check the cross-edge bound");
  run_cmd->add_flag("--auto", run.all_auto, "Resolve every parameter from the spectrum");
  run_cmd->add_option("--T", run.T, "Sign-Labeling local steps or auto");
  run_cmd->add_option("--ell", run.ell, "Components or copies, or auto");
  run_cmd->add_option("--tau_s", run.tau_s);
  run_cmd->add_option("--tau_s_max", run.tau_s_max);
  run_cmd->add_option("--tau_e", run.tau_e);
  run_cmd->add_option("--tau_e_max", run.tau_e_max);
  run_cmd->add_option("--out", run.out, "Output directory");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Acceptance suite");
  ver_cmd->add_flag("--quick", ver.quick, "Fast subset");
  ver_cmd->add_flag("--full", ver.full, "Every criterion (default)");
  ver_cmd->add_option("--only", ver.only, "Criterion ids")->delimiter(',');
  ver_cmd->add_option("--graph", ver.graph, "Verify this graph file");
  ver_cmd->add_option("--seed", ver.seed, "Suite master seed");

  SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "Sweep delta");
  sw_cmd->add_option("--graph", sw.graph, "Graph file")->required();
  sw_cmd->add_option("--protocol", sw.protocol)
      ->check(CLI::IsMember({"jump", "averaging"}));
  sw_cmd->add_option("--deltas", sw.deltas)->delimiter(',')->required();
  sw_cmd->add_option("--trials", sw.trials);
  sw_cmd->add_option("--seed", sw.seed);
  sw_cmd->add_option("--rounds", sw.rounds, "Averaging rounds");
  sw_cmd->add_option("--out", sw.out, "CSV path (stdout if empty)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  try {
    if (*gen_cmd) return CmdGenGraph(gen);
    if (*sp_cmd) return CmdSpectrum(sp);
    if (*run_cmd) {
      if (!run_config.empty()) ApplyJsonConfig(*run_cmd, run_config);
      return CmdRun(run);
    }
    if (*ver_cmd) return CmdVerify(ver);
    if (*sw_cmd) return CmdSweep(sw);
  } catch (const Error& e) {
    std::fprintf(stderr, "avgsim: %s\n", e.what());
    return ExitCodeFor(e.kind());
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "avgsim: %s\n", e.what());
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "avgsim: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace
}  // namespace avgsim

int main(int argc, char** argv) { return avgsim::Main(argc, argv); }
