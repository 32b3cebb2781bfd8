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

#ifndef RRDP_INFERENCE_H_
#define RRDP_INFERENCE_H_

// Two-sided Wald test for H0: pi = pi0 under a randomized-response design:
// power, sample sizes, and the test itself on observed counts.

#include <cmath>
#include <cstdint>
#include <optional>

#include "rrdp/design.h"
#include "rrdp/error.h"
#include "rrdp/normal.h"

namespace rrdp {

struct Hypothesis {
  double pi0 = 0.0;
  double pi1 = 0.0;
  double alpha = 0.05;

  bool operator==(const Hypothesis&) const = default;
};

inline void Validate(const Hypothesis& hyp) {
  if (!internal::OpenUnit(hyp.pi0)) ThrowInvalid("pi0 must lie in (0, 1)");
  if (!internal::OpenUnit(hyp.pi1)) ThrowInvalid("pi1 must lie in (0, 1)");
  if (hyp.pi0 == hyp.pi1) ThrowInvalid("pi0 must differ from pi1");
  if (!internal::OpenUnit(hyp.alpha)) ThrowInvalid("alpha must lie in (0, 1)");
}

inline void CheckTargetPower(double target_power) {
  if (!internal::OpenUnit(target_power)) ThrowInvalid("target power must lie in (0, 1)");
}

// z_{alpha/2}, the two-sided critical value.
inline double CriticalValue(double alpha) { return UpperNormalQuantile(alpha / 2.0); }

struct PowerResult {
  double power = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double var0 = 0.0;  // estimator variance under pi0
  double var1 = 0.0;  // estimator variance under pi1
};

// Power = Phi(d1) + 1 - Phi(d2) with
//   d1 = (pi0 - pi1 - z sqrt(V0)) / sqrt(V1),
//   d2 = (pi0 - pi1 + z sqrt(V0)) / sqrt(V1).
inline PowerResult Power(const DesignSpec& spec, const Hypothesis& hyp, std::int64_t n) {
  Validate(spec);
  Validate(hyp);
  PowerResult r;
  r.var0 = EstimatorVariance(spec, hyp.pi0, n);
  r.var1 = EstimatorVariance(spec, hyp.pi1, n);
  const double z = CriticalValue(hyp.alpha);
  const double sd0 = std::sqrt(r.var0);
  const double sd1 = std::sqrt(r.var1);
  const double delta = hyp.pi0 - hyp.pi1;
  r.d1 = (delta - z * sd0) / sd1;
  r.d2 = (delta + z * sd0) / sd1;
  r.power = NormalCdf(r.d1) + NormalCdf(-r.d2);
  return r;
}

// The design-specific power expressions, written in terms of the
// yes-probability directly rather than through EstimatorVariance. These are
// algebraically identical to Power() and serve as its cross-check.
inline double PowerDesignSpecific(const DesignSpec& spec, const Hypothesis& hyp,
                                  std::int64_t n) {
  Validate(spec);
  Validate(hyp);
  if (n < 1) ThrowInvalid("n must be at least 1");
  const double z = CriticalValue(hyp.alpha);
  const double rn = std::sqrt(static_cast<double>(n));
  const double pi0 = hyp.pi0, pi1 = hyp.pi1;
  double shift = 0.0;  // sqrt(n) * scale * (pi0 - pi1)
  double s0 = 0.0;
  double s1 = 0.0;
  auto bernoulli_sd = [](double l) { return std::sqrt(l - l * l); };
  switch (spec.kind) {
    case DesignKind::kWarner: {
      const double q = 2.0 * spec.p - 1.0;
      shift = 2.0 * rn * (pi0 - pi1) * q;
      s0 = std::sqrt(1.0 - (2.0 * pi0 - 1.0) * (2.0 * pi0 - 1.0) * q * q);
      s1 = std::sqrt(1.0 - (2.0 * pi1 - 1.0) * (2.0 * pi1 - 1.0) * q * q);
      break;
    }
    case DesignKind::kUnrelatedQuestion: {
      const double p = spec.p, y = spec.pi_y;
      shift = p * rn * (pi0 - pi1);
      s0 = bernoulli_sd(p * pi0 + (1.0 - p) * y);
      s1 = bernoulli_sd(p * pi1 + (1.0 - p) * y);
      break;
    }
    case DesignKind::kForcedResponse: {
      const double p1 = spec.p1, p2 = spec.p2;
      shift = rn * (1.0 - p1 - p2) * (pi0 - pi1);
      s0 = bernoulli_sd(p2 + (1.0 - p1 - p2) * pi0);
      s1 = bernoulli_sd(p2 + (1.0 - p1 - p2) * pi1);
      break;
    }
    case DesignKind::kKuk: {
      const double p1 = spec.p1, p2 = spec.p2;
      shift = rn * (p1 - p2) * (pi0 - pi1);
      s0 = bernoulli_sd(p1 * pi0 + p2 * (1.0 - pi0));
      s1 = bernoulli_sd(p1 * pi1 + p2 * (1.0 - pi1));
      break;
    }
    case DesignKind::kTwoStep: {
      const double p = spec.p;
      shift = rn * p * (pi0 - pi1);
      s0 = bernoulli_sd(p * pi0 + p * (1.0 - p));
      s1 = bernoulli_sd(p * pi1 + p * (1.0 - p));
      break;
    }
  }
  return 1.0 + NormalCdf((shift - z * s0) / s1) - NormalCdf((shift + z * s0) / s1);
}

// Closed-form approximate sample size for the requested power, dropping the
// far-tail Phi term:
//   n = ((z_beta sqrt(u1) + z_{alpha/2} sqrt(u0)) / (pi0 - pi1))^2
// where u = n * V is the per-respondent variance. Returns the ceiling.
inline std::int64_t RequiredSampleSize(const DesignSpec& spec, const Hypothesis& hyp,
                                       double target_power) {
  Validate(spec);
  Validate(hyp);
  CheckTargetPower(target_power);
  const double u0 = EstimatorVariance(spec, hyp.pi0, 1);
  const double u1 = EstimatorVariance(spec, hyp.pi1, 1);
  const double z_alpha = CriticalValue(hyp.alpha);
  const double z_beta = NormalQuantile(target_power);
  const double root = (z_beta * std::sqrt(u1) + z_alpha * std::sqrt(u0)) / (hyp.pi0 - hyp.pi1);
  const double n = std::ceil(root * root);
  return n < 1.0 ? 1 : static_cast<std::int64_t>(n);
}

// Smallest n in [1, n_max] whose exact power reaches target_power, by binary
// search (power is increasing in n). nullopt if n_max is not enough.
inline std::optional<std::int64_t> ExactSampleSize(const DesignSpec& spec, const Hypothesis& hyp,
                                                   double target_power,
                                                   std::int64_t n_max = 10'000'000) {
  Validate(spec);
  Validate(hyp);
  CheckTargetPower(target_power);
  if (n_max < 1) ThrowInvalid("n_max must be at least 1");
  std::int64_t lo = 1, hi = n_max;
  std::optional<std::int64_t> found;
  while (lo <= hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (Power(spec, hyp, mid).power >= target_power) {
      found = mid;
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  return found;
}

// Sample size for a direct (non-randomized) one-sample binomial Wald test,
// using the two-sided critical value. Lower bound for every design.
inline std::int64_t BinomialBaselineN(const Hypothesis& hyp, double target_power) {
  Validate(hyp);
  CheckTargetPower(target_power);
  const double z_alpha = CriticalValue(hyp.alpha);
  const double z_beta = NormalQuantile(target_power);
  const double root = (z_alpha * std::sqrt(hyp.pi0 * (1.0 - hyp.pi0)) +
                       z_beta * std::sqrt(hyp.pi1 * (1.0 - hyp.pi1))) /
                      (hyp.pi0 - hyp.pi1);
  const double n = std::ceil(root * root);
  return n < 1.0 ? 1 : static_cast<std::int64_t>(n);
}

struct WaldResult {
  double estimate = 0.0;   // raw point estimate T
  double z = 0.0;          // (T - pi0) / sqrt(V0)
  double critical = 0.0;   // z_{alpha/2} * sqrt(V0)
  bool reject = false;
};

// Rejects H0 when |T - pi0| > z_{alpha/2} sqrt(V_{pi0}(T)). Only pi0 and
// alpha of `hyp` are used.
inline WaldResult WaldTest(const DesignSpec& spec, const Hypothesis& hyp,
                           std::int64_t yes_count, std::int64_t n) {
  Validate(spec);
  if (!internal::OpenUnit(hyp.pi0)) ThrowInvalid("pi0 must lie in (0, 1)");
  if (!internal::OpenUnit(hyp.alpha)) ThrowInvalid("alpha must lie in (0, 1)");
  if (n < 1) ThrowInvalid("n must be at least 1");
  if (yes_count < 0 || yes_count > n) ThrowInvalid("yes_count must lie in [0, n]");
  WaldResult r;
  r.estimate = PointEstimate(spec, static_cast<double>(yes_count) / static_cast<double>(n));
  const double sd0 = std::sqrt(EstimatorVariance(spec, hyp.pi0, n));
  r.critical = CriticalValue(hyp.alpha) * sd0;
  r.z = (r.estimate - hyp.pi0) / sd0;
  r.reject = std::fabs(r.estimate - hyp.pi0) > r.critical;
  return r;
}

}  // namespace rrdp

#endif  // RRDP_INFERENCE_H_
