// Copyright 2026 The RRDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RRDP_SIMULATOR_H_
#define RRDP_SIMULATOR_H_

// Seeded Monte-Carlo studies of randomized-response surveys.
//
// Random streams: replication r of a study with seed s draws from
// std::mt19937_64 seeded with StreamSeed(s, r), where StreamSeed applies the
// SplitMix64 finalizer to s and to r separately and mixes the two. Every
// replication therefore owns an independent stream and aggregates are the
// same for any number of worker threads.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "rrdp/design.h"
#include "rrdp/error.h"
#include "rrdp/inference.h"
#include "rrdp/parallel.h"

namespace rrdp {

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t replication) {
  return SplitMix64(SplitMix64(seed) ^ SplitMix64(replication + 0x632BE59BD9B4E019ULL));
}

using Rng = std::mt19937_64;

// How a yes-count is drawn. kRespondent runs each design's two-stage device
// for every respondent; kBinomial draws Binomial(n, YesProbability) directly.
enum class SamplingMethod { kBinomial, kRespondent };

inline std::string_view SamplingMethodName(SamplingMethod m) {
  return m == SamplingMethod::kBinomial ? "binomial" : "respondent";
}

inline std::optional<SamplingMethod> ParseSamplingMethod(std::string_view name) {
  if (name == "binomial") return SamplingMethod::kBinomial;
  if (name == "respondent") return SamplingMethod::kRespondent;
  return std::nullopt;
}

// One respondent's report given their true membership in the sensitive group.
inline bool RandomizedReport(const DesignSpec& spec, bool sensitive, Rng& rng) {
  auto coin = [&rng](double prob) { return std::bernoulli_distribution(prob)(rng); };
  if (spec.direct) return sensitive;
  switch (spec.kind) {
    case DesignKind::kWarner: {
      // Spinner shows "A" with probability p; say yes when it names the
      // respondent's own group.
      const bool spinner_a = coin(spec.p);
      return spinner_a == sensitive;
    }
    case DesignKind::kUnrelatedQuestion:
      if (coin(spec.p)) return sensitive;
      return coin(spec.pi_y);
    case DesignKind::kForcedResponse: {
      const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      if (u < spec.p1) return false;
      if (u < spec.p1 + spec.p2) return true;
      return sensitive;
    }
    case DesignKind::kKuk: {
      const bool red1 = coin(spec.p1);
      const bool red2 = coin(spec.p2);
      return sensitive ? red1 : red2;
    }
    case DesignKind::kTwoStep:
      if (coin(spec.p)) return sensitive;
      return coin(spec.p);
  }
  return false;
}

inline std::int64_t SampleYesCount(const DesignSpec& spec, double true_pi, std::int64_t n,
                                   SamplingMethod method, Rng& rng) {
  if (method == SamplingMethod::kBinomial) {
    std::binomial_distribution<std::int64_t> dist(n, YesProbability(spec, true_pi));
    return dist(rng);
  }
  std::bernoulli_distribution membership(true_pi);
  std::int64_t yes = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (RandomizedReport(spec, membership(rng), rng)) ++yes;
  }
  return yes;
}

// Yes-count of one simulated survey of n respondents (stream 0 of `seed`).
inline std::int64_t SimulateResponses(const DesignSpec& spec, double true_pi, std::int64_t n,
                                      std::uint64_t seed,
                                      SamplingMethod method = SamplingMethod::kRespondent) {
  Validate(spec);
  CheckPrevalence(true_pi);
  if (n < 1) ThrowInvalid("n must be at least 1");
  Rng rng(StreamSeed(seed, 0));
  return SampleYesCount(spec, true_pi, n, method, rng);
}

struct SimConfig {
  DesignSpec spec;
  double true_pi = 0.0;
  std::int64_t n = 1;
  std::int64_t replications = 10'000;
  std::uint64_t seed = 0;
  std::optional<Hypothesis> hyp;  // enables empirical power
  SamplingMethod method = SamplingMethod::kBinomial;
};

struct SimReport {
  double mean_estimate = 0.0;
  double sd_estimate = 0.0;  // sample sd of the raw estimates
  double bias = 0.0;
  double mse = 0.0;
  std::optional<double> empirical_power;
  double analytic_sd = 0.0;  // sqrt(EstimatorVariance(spec, true_pi, n))
  std::int64_t replications = 0;
  std::uint64_t seed = 0;
};

inline SimReport RunSimulation(const SimConfig& cfg, int threads = 1) {
  Validate(cfg.spec);
  CheckPrevalence(cfg.true_pi);
  if (cfg.n < 1) ThrowInvalid("n must be at least 1");
  if (cfg.replications < 1) ThrowInvalid("replications must be at least 1");
  if (cfg.hyp) {
    if (!internal::OpenUnit(cfg.hyp->pi0)) ThrowInvalid("pi0 must lie in (0, 1)");
    if (!internal::OpenUnit(cfg.hyp->alpha)) ThrowInvalid("alpha must lie in (0, 1)");
  }
  const auto reps = static_cast<std::size_t>(cfg.replications);
  std::vector<double> estimates(reps);
  std::vector<unsigned char> rejected(cfg.hyp ? reps : 0);
  ParallelFor(reps, threads, [&](std::size_t r) {
    Rng rng(StreamSeed(cfg.seed, r));
    const std::int64_t yes = SampleYesCount(cfg.spec, cfg.true_pi, cfg.n, cfg.method, rng);
    estimates[r] = PointEstimate(cfg.spec, static_cast<double>(yes) / static_cast<double>(cfg.n));
    if (cfg.hyp) rejected[r] = WaldTest(cfg.spec, *cfg.hyp, yes, cfg.n).reject ? 1 : 0;
  });

  SimReport report;
  report.replications = cfg.replications;
  report.seed = cfg.seed;
  report.analytic_sd = std::sqrt(EstimatorVariance(cfg.spec, cfg.true_pi, cfg.n));
  double sum = 0.0;
  for (double e : estimates) sum += e;
  const double mean = sum / static_cast<double>(reps);
  double ss = 0.0, sq_err = 0.0;
  for (double e : estimates) {
    ss += (e - mean) * (e - mean);
    sq_err += (e - cfg.true_pi) * (e - cfg.true_pi);
  }
  report.mean_estimate = mean;
  report.bias = mean - cfg.true_pi;
  report.sd_estimate = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) : 0.0;
  report.mse = sq_err / static_cast<double>(reps);
  if (cfg.hyp) {
    std::int64_t count = 0;
    for (unsigned char x : rejected) count += x;
    report.empirical_power = static_cast<double>(count) / static_cast<double>(reps);
  }
  return report;
}

}  // namespace rrdp

#endif  // RRDP_SIMULATOR_H_
