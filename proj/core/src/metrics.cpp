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
#include "avgsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "avgsim/error.hpp"
#include "avgsim/protocols.hpp"
#include "avgsim/rng.hpp"

namespace avgsim {

ReconstructionScore WeakReconstructionError(
    const std::vector<std::int8_t>& labels, const std::vector<int>& chi) {
  const int n = static_cast<int>(chi.size());
  if (static_cast<int>(labels.size()) != n) {
    throw Error(ErrorKind::kInvalidParams, "labels length differs from n");
  }
  int size1 = 0;
  int wrong1 = 0;
  int wrong2 = 0;
  for (int u = 0; u < n; ++u) {
    if (labels[u] != 1 && labels[u] != -1) {
      throw Error(ErrorKind::kInvalidParams, "labels must be +1 or -1");
    }
    if (chi[u] > 0) {
      ++size1;
      wrong1 += labels[u] != 1 ? 1 : 0;
    } else {
      wrong2 += labels[u] != -1 ? 1 : 0;
    }
  }
  const int size2 = n - size1;
  ReconstructionScore s;
  const int direct = wrong1 + wrong2;
  s.flip_used = n - direct < direct;
  if (s.flip_used) {
    wrong1 = size1 - wrong1;
    wrong2 = size2 - wrong2;
  }
  s.error_fraction = static_cast<double>(wrong1 + wrong2) / n;
  s.error_v1 = size1 > 0 ? static_cast<double>(wrong1) / size1 : 0.0;
  s.error_v2 = size2 > 0 ? static_cast<double>(wrong2) / size2 : 0.0;
  s.w1_size = size1 - wrong1;
  s.w2_size = size2 - wrong2;
  return s;
}

namespace {

int Hamming(const std::int8_t* a, const std::int8_t* b, int ell) {
  int d = 0;
  for (int j = 0; j < ell; ++j) d += a[j] != b[j] ? 1 : 0;
  return d;
}

}  // namespace

CslScore CslEvaluate(const std::vector<std::int8_t>& labels, int ell,
                     const std::vector<int>& chi, double eps,
                     std::uint64_t sample_seed) {
  const int n = static_cast<int>(chi.size());
  if (ell < 1) throw Error(ErrorKind::kInvalidParams, "ell must be >= 1");
  if (labels.size() != static_cast<std::size_t>(n) * ell) {
    throw Error(ErrorKind::kInvalidParams, "label matrix must be n x ell");
  }
  CslScore s;
  s.sample_seed = sample_seed;
  std::vector<int> sum1(ell, 0);
  std::vector<int> sum2(ell, 0);
  for (int u = 0; u < n; ++u) {
    auto& sum = chi[u] > 0 ? sum1 : sum2;
    for (int j = 0; j < ell; ++j) {
      sum[j] += labels[static_cast<std::size_t>(u) * ell + j];
    }
  }
  s.reference1.resize(ell);
  s.reference2.resize(ell);
  for (int j = 0; j < ell; ++j) {
    s.reference1[j] = static_cast<std::int8_t>(SignOf(sum1[j]));
    s.reference2[j] = static_cast<std::int8_t>(SignOf(sum2[j]));
  }
  s.reference_distance =
      static_cast<double>(Hamming(s.reference1.data(), s.reference2.data(),
                                  ell)) /
      ell;

  const double radius = 2.0 * eps * ell + 1e-9;
  std::vector<int> in1;
  std::vector<int> in2;
  for (int u = 0; u < n; ++u) {
    const auto* row = labels.data() + static_cast<std::size_t>(u) * ell;
    const auto& ref = chi[u] > 0 ? s.reference1 : s.reference2;
    if (Hamming(row, ref.data(), ell) <= radius) {
      (chi[u] > 0 ? in1 : in2).push_back(u);
    }
  }
  s.inlier_set_size = static_cast<int>(in1.size() + in2.size());
  s.gamma = 1.0 - static_cast<double>(s.inlier_set_size) / n;

  auto row = [&](int u) {
    return labels.data() + static_cast<std::size_t>(u) * ell;
  };
  int max_intra = 0;
  int min_cross = ell;
  if (n <= 2000) {
    for (const auto* group : {&in1, &in2}) {
      for (std::size_t a = 0; a < group->size(); ++a) {
        for (std::size_t b = a + 1; b < group->size(); ++b) {
          max_intra = std::max(max_intra,
                               Hamming(row((*group)[a]), row((*group)[b]), ell));
        }
      }
    }
    for (int u : in1) {
      for (int v : in2) min_cross = std::min(min_cross, Hamming(row(u), row(v), ell));
    }
  } else {
    s.pairs_sampled = true;
    Rng rng(DeriveSeed(sample_seed, Stream::kPairs));
    constexpr int kPairs = 100000;
    for (const auto* group : {&in1, &in2}) {
      if (group->size() < 2) continue;
      for (int i = 0; i < kPairs / 2; ++i) {
        const auto a = rng.Below(group->size());
        auto b = rng.Below(group->size() - 1);
        if (b >= a) ++b;
        max_intra =
            std::max(max_intra, Hamming(row((*group)[a]), row((*group)[b]), ell));
      }
    }
    if (!in1.empty() && !in2.empty()) {
      for (int i = 0; i < kPairs; ++i) {
        const int u = in1[rng.Below(in1.size())];
        const int v = in2[rng.Below(in2.size())];
        min_cross = std::min(min_cross, Hamming(row(u), row(v), ell));
      }
    }
  }
  s.c1_observed = static_cast<double>(max_intra) / ell;
  s.c2_observed = static_cast<double>(min_cross) / ell;
  return s;
}

std::vector<SetCount> BadSetSeries(const RunResult& run) {
  std::vector<SetCount> out;
  for (const auto& o : run.series) {
    if (o.bad_count < 0) {
      throw Error(ErrorKind::kMissingObserver, "run recorded no bad-node counts");
    }
    out.push_back({o.t, o.bad_count,
                   static_cast<std::int64_t>(run.x0.size()) - o.bad_count});
  }
  return out;
}

std::vector<SetCount> ThresholdSetSeries(const RunResult& run) {
  std::vector<SetCount> out;
  for (const auto& o : run.series) {
    if (o.r_eta_count < 0) {
      throw Error(ErrorKind::kMissingObserver, "run recorded no threshold sets");
    }
    out.push_back({o.t, o.r_eta_count, o.r_eta_bar_count});
  }
  return out;
}

double NonEphemeralWindowPassFraction(const std::vector<RunResult>& runs,
                                      int n, double lambda3, double eps) {
  if (runs.empty()) return 0.0;
  const double base = static_cast<double>(n) / lambda3 *
                      std::log(static_cast<double>(n));
  const double lo = 6.0 * base;
  const double hi = 12.0 * base;
  int pass = 0;
  for (const auto& run : runs) {
    std::int64_t worst = -1;
    for (const auto& s : BadSetSeries(run)) {
      if (s.t >= lo && s.t <= hi) worst = std::max(worst, s.count);
    }
    if (worst < 0) {
      throw Error(ErrorKind::kMissingObserver,
                  "no observation inside the non-ephemeral window");
    }
    if (static_cast<double>(worst) <= 3.0 * eps * n) ++pass;
  }
  return static_cast<double>(pass) / static_cast<double>(runs.size());
}

double UniformityFraction(const ActivationSchedule& schedule, double a,
                          double b_param, double zeta) {
  if (!schedule.history()) {
    throw Error(ErrorKind::kInvalidParams, "schedule has no history");
  }
  const int n = static_cast<int>(schedule.local_counts().size());
  const double ln_n = std::log(static_cast<double>(n));
  const double horizon = 0.6 * b_param * n * ln_n;
  if (static_cast<double>(schedule.step()) < horizon) {
    throw Error(ErrorKind::kScheduleTooShort,
                "schedule shorter than 0.6 b n ln n");
  }
  constexpr auto kNever = std::numeric_limits<std::int64_t>::max();
  auto T = [&](int u, std::int64_t tau) {
    return tau <= schedule.local_count(u) ? schedule.LocalToGlobal(u, tau)
                                          : kNever;
  };
  const auto tau_lo = static_cast<std::int64_t>(std::ceil(a * ln_n));
  const auto tau_end = static_cast<std::int64_t>(std::ceil(b_param * ln_n + 1.0));
  const auto tau_hi = static_cast<std::int64_t>(std::floor(b_param * ln_n));
  const double min_gap = std::sqrt(zeta) * n;
  const double max_close = 4.0 * std::sqrt(zeta);
  int good = 0;
  for (int u = 0; u < n; ++u) {
    const std::int64_t start = T(u, tau_lo);
    if (start != kNever && static_cast<double>(start) <= 0.4 * a * n * ln_n) {
      continue;
    }
    const std::int64_t end = T(u, tau_end);
    if (end == kNever || static_cast<double>(end) > horizon) continue;
    std::int64_t close = 0;
    std::int64_t total = 0;
    for (std::int64_t tau = tau_lo; tau <= tau_hi; ++tau) {
      ++total;
      const std::int64_t t0 = T(u, tau);
      const std::int64_t t1 = T(u, tau + 1);
      if (t0 != kNever && t1 != kNever &&
          static_cast<double>(t1) < static_cast<double>(t0) + min_gap) {
        ++close;
      }
    }
    const double frac =
        total > 0 ? static_cast<double>(close) / static_cast<double>(total) : 0.0;
    if (frac <= max_close) ++good;
  }
  return static_cast<double>(good) / n;
}

double CoverageIn(const std::vector<std::int64_t>& freeze_times, double lo,
                  double hi) {
  if (freeze_times.empty()) return 0.0;
  std::size_t inside = 0;
  for (auto t : freeze_times) {
    const auto v = static_cast<double>(t);
    if (v >= lo && v <= hi) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(freeze_times.size());
}

double StoppingTimeCoverage(const std::vector<std::int64_t>& freeze_times,
                            int T, int n) {
  const double tn = static_cast<double>(T) * n;
  return CoverageIn(freeze_times, 0.75 * tn, 1.5 * tn);
}

double Median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace avgsim
