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
#ifndef AVGSIM_METRICS_HPP_
#define AVGSIM_METRICS_HPP_

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "avgsim/dynamics.hpp"

namespace avgsim {

struct ReconstructionScore {
  double error_fraction = 0.0;
  bool flip_used = false;
  double error_v1 = 0.0;
  double error_v2 = 0.0;
  int w1_size = 0;
  int w2_size = 0;
};

ReconstructionScore WeakReconstructionError(const std::vector<std::int8_t>& labels,
                                            const std::vector<int>& chi);

struct CslScore {
  double gamma = 0.0;
  double c1_observed = 0.0;
  double c2_observed = 1.0;
  int inlier_set_size = 0;
  double reference_distance = 0.0;
  std::vector<std::int8_t> reference1;
  std::vector<std::int8_t> reference2;
  bool pairs_sampled = false;
  std::uint64_t sample_seed = 0;
};

// `labels` is node-major n x ell. Reference strings are componentwise
// majorities (ties to +1); inliers lie within normalized distance 2 eps of
// their own reference. Pairwise extremes are exact up to n = 2000, sampled
// over 10^5 pairs beyond.
CslScore CslEvaluate(const std::vector<std::int8_t>& labels, int ell,
                     const std::vector<int>& chi, double eps,
                     std::uint64_t sample_seed = 0);

struct SetCount {
  std::int64_t t = 0;
  std::int64_t count = 0;
  std::int64_t complement = 0;
};

// Pure reads of recorded observations; throw MissingObserver when the run
// did not enable the observer.
std::vector<SetCount> BadSetSeries(const RunResult& run);
std::vector<SetCount> ThresholdSetSeries(const RunResult& run);

// Fraction of runs whose max |B_t| over t in [6 (n/lambda3) ln n,
// 12 (n/lambda3) ln n] is at most 3 eps n.
double NonEphemeralWindowPassFraction(const std::vector<RunResult>& runs,
                                      int n, double lambda3, double eps);

// Fraction of (a, b, zeta)-uniform nodes. Requires a history schedule of at
// least 0.6 b n ln n rounds.
double UniformityFraction(const ActivationSchedule& schedule, double a,
                          double b_param, double zeta);

// Fraction of freeze times inside [lo, hi].
double CoverageIn(const std::vector<std::int64_t>& freeze_times, double lo,
                  double hi);
// Fraction inside [3Tn/4, 3Tn/2].
double StoppingTimeCoverage(const std::vector<std::int64_t>& freeze_times,
                            int T, int n);

// Welford accumulator.
class MeanAccumulator {
 public:
  void Add(double x) {
    ++count_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(count_);
    m2_ += d * (x - mean_);
  }
  std::int64_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double std_error() const {
    return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_))
                      : 0.0;
  }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Middle element, or the mean of the two middle elements.
double Median(std::vector<double> values);

}  // namespace avgsim

#endif  // AVGSIM_METRICS_HPP_
