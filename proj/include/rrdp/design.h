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

#ifndef RRDP_DESIGN_H_
#define RRDP_DESIGN_H_

// The five randomized-response mechanisms: parameter validation, the
// observed-yes probability, the unbiased estimator and its variance, and the
// local differential-privacy budget of each mechanism.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "rrdp/error.h"

namespace rrdp {

enum class DesignKind {
  kWarner,
  kUnrelatedQuestion,
  kForcedResponse,
  kKuk,
  kTwoStep,
};

inline constexpr DesignKind kAllDesignKinds[] = {
    DesignKind::kWarner, DesignKind::kUnrelatedQuestion,
    DesignKind::kForcedResponse, DesignKind::kKuk, DesignKind::kTwoStep};

inline std::string_view DesignKindName(DesignKind kind) {
  switch (kind) {
    case DesignKind::kWarner:
      return "warner";
    case DesignKind::kUnrelatedQuestion:
      return "uqrr";
    case DesignKind::kForcedResponse:
      return "frd";
    case DesignKind::kKuk:
      return "kuk";
    case DesignKind::kTwoStep:
      return "twostep";
  }
  return "unknown";
}

// Accepts the canonical names above plus a few long-form aliases.
inline std::optional<DesignKind> ParseDesignKind(std::string_view name) {
  if (name == "warner") return DesignKind::kWarner;
  if (name == "uqrr" || name == "unrelated" || name == "unrelated-question")
    return DesignKind::kUnrelatedQuestion;
  if (name == "frd" || name == "forced" || name == "forced-response")
    return DesignKind::kForcedResponse;
  if (name == "kuk") return DesignKind::kKuk;
  if (name == "twostep" || name == "two-step") return DesignKind::kTwoStep;
  return std::nullopt;
}

// True for designs with a single randomization probability (Warner, UQRR with
// a fixed pi_y, two-step); false for the (p1, p2) designs.
inline bool IsScalarDesign(DesignKind kind) {
  return kind != DesignKind::kForcedResponse && kind != DesignKind::kKuk;
}

// A randomized-response mechanism and its randomization parameters.
//
//   Warner            p    probability the spinner lands on "A"
//   UnrelatedQuestion p    probability of being asked the sensitive question
//                     pi_y known prevalence of the unrelated trait
//   ForcedResponse    p1   forced-"No" probability, p2 forced-"Yes" probability
//   Kuk               p1   red fraction of deck 1 (used by group A)
//                     p2   red fraction of deck 2 (used by group B)
//   TwoStep           p    heads probability of the coin
//
// Fields a kind does not use are zero. `direct` marks direct questioning,
// represented as a forced-response design with p1 = p2 = 0; it is only
// produced by DesignSpec::Direct() and carries an unbounded budget.
struct DesignSpec {
  DesignKind kind = DesignKind::kWarner;
  double p = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double pi_y = 0.0;
  bool direct = false;

  static DesignSpec Warner(double p) {
    return {.kind = DesignKind::kWarner, .p = p};
  }
  static DesignSpec UnrelatedQuestion(double p, double pi_y) {
    return {.kind = DesignKind::kUnrelatedQuestion, .p = p, .pi_y = pi_y};
  }
  static DesignSpec ForcedResponse(double p1, double p2) {
    return {.kind = DesignKind::kForcedResponse, .p1 = p1, .p2 = p2};
  }
  static DesignSpec Kuk(double p1, double p2) {
    return {.kind = DesignKind::kKuk, .p1 = p1, .p2 = p2};
  }
  static DesignSpec TwoStep(double p) {
    return {.kind = DesignKind::kTwoStep, .p = p};
  }
  static DesignSpec Direct() {
    return {.kind = DesignKind::kForcedResponse, .direct = true};
  }

  // Design with the given kind, taking the scalar parameter from `p` or the
  // pair from (p1, p2); `aux` is pi_y for UQRR and ignored otherwise.
  static DesignSpec Make(DesignKind kind, double p, double p2 = 0.0,
                         double aux = 0.0) {
    switch (kind) {
      case DesignKind::kWarner:
        return Warner(p);
      case DesignKind::kUnrelatedQuestion:
        return UnrelatedQuestion(p, aux);
      case DesignKind::kForcedResponse:
        return ForcedResponse(p, p2);
      case DesignKind::kKuk:
        return Kuk(p, p2);
      case DesignKind::kTwoStep:
        return TwoStep(p);
    }
    return Warner(p);
  }

  // The coordinate optimizers vary: p for scalar designs, p1 otherwise.
  double primary() const { return IsScalarDesign(kind) ? p : p1; }

  bool operator==(const DesignSpec&) const = default;
};

namespace internal {

inline bool OpenUnit(double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; }

inline std::string Fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace internal

// Throws Error(kInvalidParameter) naming the first violated constraint.
// Boundary probabilities 0 and 1 are rejected for every parameter so that all
// budget ratios stay finite.
inline void Validate(const DesignSpec& spec) {
  using internal::Fmt;
  using internal::OpenUnit;
  if (spec.direct) {
    if (spec.kind != DesignKind::kForcedResponse || spec.p1 != 0.0 ||
        spec.p2 != 0.0) {
      ThrowInvalid("direct questioning must be forced-response with p1 = p2 = 0");
    }
    return;
  }
  switch (spec.kind) {
    case DesignKind::kWarner:
      if (!OpenUnit(spec.p)) ThrowInvalid("p must lie in (0, 1), got " + Fmt(spec.p));
      if (spec.p == 0.5) ThrowInvalid("p must differ from 1/2");
      return;
    case DesignKind::kUnrelatedQuestion:
      if (!OpenUnit(spec.p)) ThrowInvalid("p must lie in (0, 1), got " + Fmt(spec.p));
      if (!OpenUnit(spec.pi_y))
        ThrowInvalid("pi_y must lie in (0, 1), got " + Fmt(spec.pi_y));
      return;
    case DesignKind::kForcedResponse:
      if (!OpenUnit(spec.p1)) ThrowInvalid("p1 must lie in (0, 1), got " + Fmt(spec.p1));
      if (!OpenUnit(spec.p2)) ThrowInvalid("p2 must lie in (0, 1), got " + Fmt(spec.p2));
      if (!(spec.p1 + spec.p2 < 1.0)) ThrowInvalid("p1 + p2 must be below 1");
      return;
    case DesignKind::kKuk:
      if (!OpenUnit(spec.p1)) ThrowInvalid("p1 must lie in (0, 1), got " + Fmt(spec.p1));
      if (!OpenUnit(spec.p2)) ThrowInvalid("p2 must lie in (0, 1), got " + Fmt(spec.p2));
      if (spec.p1 == spec.p2) ThrowInvalid("p1 must differ from p2");
      return;
    case DesignKind::kTwoStep:
      if (!OpenUnit(spec.p)) ThrowInvalid("p must lie in (0, 1), got " + Fmt(spec.p));
      return;
  }
  ThrowInvalid("unknown design kind");
}

inline bool IsValid(const DesignSpec& spec) {
  try {
    Validate(spec);
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline void CheckPrevalence(double pi) {
  if (!(pi >= 0.0 && pi <= 1.0))
    ThrowInvalid("prevalence must lie in [0, 1], got " + internal::Fmt(pi));
}

// d lambda / d pi: the factor by which the sensitive proportion enters the
// yes-probability. The estimator divides by it.
inline double EstimatorScale(const DesignSpec& spec) {
  switch (spec.kind) {
    case DesignKind::kWarner:
      return 2.0 * spec.p - 1.0;
    case DesignKind::kUnrelatedQuestion:
      return spec.p;
    case DesignKind::kForcedResponse:
      return 1.0 - spec.p1 - spec.p2;
    case DesignKind::kKuk:
      return spec.p1 - spec.p2;
    case DesignKind::kTwoStep:
      return spec.p;
  }
  return 0.0;
}

// P(report "Yes") when the sensitive proportion is `pi`.
inline double YesProbability(const DesignSpec& spec, double pi) {
  Validate(spec);
  CheckPrevalence(pi);
  const double p = spec.p, p1 = spec.p1, p2 = spec.p2;
  switch (spec.kind) {
    case DesignKind::kWarner:
      return pi * p + (1.0 - pi) * (1.0 - p);
    case DesignKind::kUnrelatedQuestion:
      return p * pi + (1.0 - p) * spec.pi_y;
    case DesignKind::kForcedResponse:
      return p2 + (1.0 - p1 - p2) * pi;
    case DesignKind::kKuk:
      return p1 * pi + p2 * (1.0 - pi);
    case DesignKind::kTwoStep:
      return p * pi + p * (1.0 - p);
  }
  return 0.0;
}

// Unbiased moment estimator of pi from the observed yes-rate. The raw value
// is returned; it may fall outside [0, 1].
inline double PointEstimate(const DesignSpec& spec, double yes_rate) {
  Validate(spec);
  if (!(yes_rate >= 0.0 && yes_rate <= 1.0))
    ThrowInvalid("yes_rate must lie in [0, 1], got " + internal::Fmt(yes_rate));
  const double p = spec.p, p1 = spec.p1, p2 = spec.p2;
  switch (spec.kind) {
    case DesignKind::kWarner:
      return (p - 1.0) / (2.0 * p - 1.0) + yes_rate / (2.0 * p - 1.0);
    case DesignKind::kUnrelatedQuestion:
      return (yes_rate - (1.0 - p) * spec.pi_y) / p;
    case DesignKind::kForcedResponse:
      return (yes_rate - p2) / (1.0 - p1 - p2);
    case DesignKind::kKuk:
      return (yes_rate - p2) / (p1 - p2);
    case DesignKind::kTwoStep:
      return yes_rate / p - (1.0 - p);
  }
  return 0.0;
}

// Variance of PointEstimate over samples of size n when the true proportion
// is `pi`.
inline double EstimatorVariance(const DesignSpec& spec, double pi, std::int64_t n) {
  Validate(spec);
  CheckPrevalence(pi);
  if (n < 1) ThrowInvalid("n must be at least 1");
  const double nn = static_cast<double>(n);
  if (spec.kind == DesignKind::kWarner) {
    const double dp = spec.p - 0.5;
    const double dpi = pi - 0.5;
    return (1.0 / (16.0 * dp * dp) - dpi * dpi) / nn;
  }
  const double lambda = YesProbability(spec, pi);
  const double scale = EstimatorScale(spec);
  return (lambda - lambda * lambda) / (nn * scale * scale);
}

// Local differential-privacy budget (natural log) of a single report.
// Throws Error(kInfiniteBudget) if any ratio is unbounded, e.g. for direct
// questioning.
inline double PrivacyBudget(const DesignSpec& spec) {
  Validate(spec);
  if (spec.direct) throw Error(ErrorCode::kInfiniteBudget, "direct questioning has no finite budget");
  auto ratio = [](double num, double den) {
    if (!(den > 0.0) || !(num > 0.0))
      throw Error(ErrorCode::kInfiniteBudget, "privacy budget ratio is unbounded");
    return std::log(num / den);
  };
  const double p = spec.p, p1 = spec.p1, p2 = spec.p2;
  switch (spec.kind) {
    case DesignKind::kWarner:
      return std::max(ratio(p, 1.0 - p), ratio(1.0 - p, p));
    case DesignKind::kUnrelatedQuestion: {
      const double y = spec.pi_y;
      return std::max(ratio(p + (1.0 - p) * y, y * (1.0 - p)),
                      ratio(p + (1.0 - y) * (1.0 - p), (1.0 - y) * (1.0 - p)));
    }
    case DesignKind::kForcedResponse:
      return std::max(ratio(1.0 - p1, p2), ratio(1.0 - p2, p1));
    case DesignKind::kKuk:
      return std::max({ratio(p1, p2), ratio(p2, p1), ratio(1.0 - p1, 1.0 - p2),
                       ratio(1.0 - p2, 1.0 - p1)});
    case DesignKind::kTwoStep:
      return std::max(ratio(p + p * (1.0 - p), p * (1.0 - p)),
                      ratio(p + (1.0 - p) * (1.0 - p), (1.0 - p) * (1.0 - p)));
  }
  return 0.0;
}

// Finite budget, or +infinity when PrivacyBudget would throw kInfiniteBudget.
inline double PrivacyBudgetOrInfinity(const DesignSpec& spec) {
  try {
    return PrivacyBudget(spec);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInfiniteBudget) return INFINITY;
    throw;
  }
}

}  // namespace rrdp

#endif  // RRDP_DESIGN_H_
