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

#include "rrdp/design.h"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "test_util.h"

namespace rrdp {
namespace {

using testing::SampleDesigns;

TEST(DesignKindTest, NamesRoundTrip) {
  for (DesignKind kind : kAllDesignKinds) {
    auto parsed = ParseDesignKind(DesignKindName(kind));
    ASSERT_TRUE(parsed.has_value());
    EXPECT_EQ(*parsed, kind);
  }
  EXPECT_EQ(ParseDesignKind("forced-response"), DesignKind::kForcedResponse);
  EXPECT_EQ(ParseDesignKind("two-step"), DesignKind::kTwoStep);
  EXPECT_EQ(ParseDesignKind("unrelated"), DesignKind::kUnrelatedQuestion);
  EXPECT_FALSE(ParseDesignKind("coin").has_value());
}

TEST(ValidateTest, RejectsOutOfRangeParameters) {
  auto code_of = [](const DesignSpec& spec) {
    try {
      Validate(spec);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kNoSolution;  // sentinel: no throw
  };
  EXPECT_EQ(code_of(DesignSpec::Warner(0.5)), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of(DesignSpec::Warner(0.0)), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of(DesignSpec::Warner(1.0)), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of(DesignSpec::Warner(NAN)), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of(DesignSpec::UnrelatedQuestion(0.5, 0.0)), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of(DesignSpec::UnrelatedQuestion(1.0, 0.5)), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of(DesignSpec::ForcedResponse(0.5, 0.5)), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of(DesignSpec::ForcedResponse(0.7, 0.4)), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of(DesignSpec::Kuk(0.3, 0.3)), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of(DesignSpec::TwoStep(1.0)), ErrorCode::kInvalidParameter);
  for (const DesignSpec& spec : SampleDesigns()) EXPECT_TRUE(IsValid(spec));
  EXPECT_TRUE(IsValid(DesignSpec::Direct()));
}

TEST(YesProbabilityTest, FrozenValues) {
  EXPECT_NEAR(YesProbability(DesignSpec::TwoStep(0.418), 0.1038), 0.2866644, 1e-7);
  EXPECT_DOUBLE_EQ(YesProbability(DesignSpec::Warner(0.7), 0.2), 0.7 * 0.2 + 0.3 * 0.8);
  EXPECT_DOUBLE_EQ(YesProbability(DesignSpec::ForcedResponse(0.1, 0.2), 0.5), 0.2 + 0.7 * 0.5);
  EXPECT_DOUBLE_EQ(YesProbability(DesignSpec::Direct(), 0.3), 0.3);
}

TEST(PointEstimateTest, InvertsYesProbability) {
  for (const DesignSpec& spec : SampleDesigns()) {
    for (double pi = 0.0; pi <= 1.0; pi += 0.05) {
      EXPECT_NEAR(PointEstimate(spec, YesProbability(spec, pi)), pi, 1e-12)
          << DesignKindName(spec.kind) << " pi=" << pi;
    }
  }
}

TEST(PointEstimateTest, RawEstimateIsNotClamped) {
  const DesignSpec spec = DesignSpec::ForcedResponse(0.3, 0.3);
  EXPECT_LT(PointEstimate(spec, 0.0), 0.0);
  EXPECT_GT(PointEstimate(spec, 1.0), 1.0);
}

TEST(EstimatorVarianceTest, MatchesBinomialVarianceOfYesRate) {
  // Var(T) = lambda (1 - lambda) / (n scale^2), including Warner, whose
  // closed form is written differently.
  for (const DesignSpec& spec : SampleDesigns()) {
    const double scale = EstimatorScale(spec);
    for (double pi : {0.0, 0.1, 0.1038, 0.5, 0.9, 1.0}) {
      const double lambda = YesProbability(spec, pi);
      const double expected = lambda * (1.0 - lambda) / (809.0 * scale * scale);
      EXPECT_NEAR(EstimatorVariance(spec, pi, 809), expected, 1e-14);
    }
  }
}

TEST(EstimatorVarianceTest, FrozenStandardDeviations) {
  const double pi = 0.1038;
  auto sd = [&](const DesignSpec& s) { return std::sqrt(EstimatorVariance(s, pi, 809)); };
  EXPECT_NEAR(sd(DesignSpec::Warner(0.269)), 0.0354085, 5e-7);
  EXPECT_NEAR(sd(DesignSpec::UnrelatedQuestion(0.407, 0.6)), 0.0422844, 5e-7);
  EXPECT_NEAR(sd(DesignSpec::ForcedResponse(0.32, 0.25)), 0.0372740, 5e-7);
  EXPECT_NEAR(sd(DesignSpec::Kuk(0.68, 0.25)), 0.0372740, 5e-7);
  EXPECT_NEAR(sd(DesignSpec::TwoStep(0.418)), 0.0380350, 5e-7);
}

TEST(EstimatorVarianceTest, RejectsBadArguments) {
  EXPECT_THROW(EstimatorVariance(DesignSpec::Warner(0.3), 1.5, 10), Error);
  EXPECT_THROW(EstimatorVariance(DesignSpec::Warner(0.3), 0.5, 0), Error);
}

TEST(PrivacyBudgetTest, FrozenValues) {
  EXPECT_NEAR(PrivacyBudget(DesignSpec::ForcedResponse(1.0 / 12, 2.0 / 12)), 2.302585, 1e-6);
  EXPECT_NEAR(PrivacyBudget(DesignSpec::Kuk(0.68, 0.25)), 1.000632, 1e-6);
  EXPECT_NEAR(PrivacyBudget(DesignSpec::Warner(0.75)), std::log(3.0), 1e-12);
  EXPECT_NEAR(PrivacyBudget(DesignSpec::Warner(0.25)), std::log(3.0), 1e-12);
  EXPECT_NEAR(PrivacyBudget(DesignSpec::TwoStep(1e-9)), std::log(2.0), 1e-8);
}

TEST(PrivacyBudgetTest, DirectQuestioningIsUnbounded) {
  try {
    PrivacyBudget(DesignSpec::Direct());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfiniteBudget);
  }
  EXPECT_TRUE(std::isinf(PrivacyBudgetOrInfinity(DesignSpec::Direct())));
}

// epsilon is the largest log ratio of report probabilities between the two
// truths, read off the 2x2 response matrix.
TEST(PrivacyBudgetTest, BoundIsAttainedOnResponseMatrix) {
  for (const DesignSpec& spec : SampleDesigns()) {
    const double yes1 = YesProbability(spec, 1.0);
    const double yes0 = YesProbability(spec, 0.0);
    const double eps = PrivacyBudget(spec);
    const double ratios[] = {yes1 / yes0, yes0 / yes1, (1 - yes1) / (1 - yes0),
                             (1 - yes0) / (1 - yes1)};
    double worst = 0.0;
    for (double r : ratios) {
      EXPECT_LE(r, std::exp(eps) * (1 + 1e-12));
      worst = std::max(worst, std::log(r));
    }
    EXPECT_NEAR(worst, eps, 1e-12) << DesignKindName(spec.kind);
  }
}

TEST(PrivacyBudgetTest, WarnerIsSymmetricAboutOneHalf) {
  for (double p = 0.01; p < 0.5; p += 0.01) {
    EXPECT_NEAR(PrivacyBudget(DesignSpec::Warner(p)), PrivacyBudget(DesignSpec::Warner(1 - p)),
                1e-12);
  }
}

}  // namespace
}  // namespace rrdp
