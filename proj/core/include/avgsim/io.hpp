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
#ifndef AVGSIM_IO_HPP_
#define AVGSIM_IO_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "avgsim/dynamics.hpp"
#include "avgsim/graph.hpp"
#include "avgsim/metrics.hpp"
#include "avgsim/spectral.hpp"

namespace avgsim {

const char* Version();

// 17 significant digits, '.' separator, independent of the global locale.
std::string FormatDouble(double v);

// {kind, n, d, b, chi, edges}; SBM files also carry p, q, beta.
std::string GraphToJson(const ClusteredGraph& g);
// Throws Error(kConfig) on malformed input.
ClusteredGraph GraphFromJson(const std::string& text);
void WriteGraphFile(const ClusteredGraph& g, const std::string& path);
ClusteredGraph ReadGraphFile(const std::string& path);

// {lambdas, wbar_lambdas, f_perp_norm_sq, m12}.
std::string SpectrumToJson(const GraphSpectrum& spec);

// t, a_par, a_y, y_norm_sq, z_norm_sq, bad_count, r_eta_count, cross_count.
// Disabled observers are written as empty cells.
void WriteSeriesCsv(std::ostream& out, const std::vector<Observation>& series);

// node, chi, label, label_global_time, copy_labels.
void WriteLabelsCsv(std::ostream& out, const std::vector<int>& chi,
                    const std::vector<std::int8_t>& labels,
                    const std::vector<std::int64_t>& label_times,
                    const std::vector<std::int8_t>* copy_labels = nullptr,
                    int ell = 0);

struct OracleRow {
  std::int64_t t = 0;
  double predicted = 0.0;
  double empirical_mean = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  bool holds = false;
};

// t, predicted, empirical_mean, std_error, bound, holds.
void WriteOracleCsv(std::ostream& out, const std::vector<OracleRow>& rows);

struct ScoreRecord {
  std::optional<ReconstructionScore> reconstruction;
  std::optional<CslScore> csl;
  std::optional<double> window_pass_fraction;
};

// {error_fraction, flip_used, gamma, c1_observed, c2_observed,
//  window_pass_fraction}; absent parts are null.
std::string ScoreToJson(const ScoreRecord& score);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace avgsim

#endif  // AVGSIM_IO_HPP_
