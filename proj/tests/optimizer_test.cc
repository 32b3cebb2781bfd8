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

#include "rrdp/optimizer.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"

namespace rrdp {
namespace {

const Hypothesis kLow{0.1, 0.2, 0.05};
const Hypothesis kMid{0.2, 0.3, 0.05};
const Grid kGrid = Grid::FromStep(0.01);

RegionQuery PowerQuery(const Hypothesis& hyp, std::int64_t n) {
  RegionQuery q;
  q.hyp = hyp;
  q.n = n;
  q.target_power = 0.8;
  q.mode = RegionMode::kPower;
  return q;
}

RegionQuery PrivacyQuery(double c) {
  RegionQuery q;
  q.cap = {c, true};
  q.mode = RegionMode::kPrivacy;
  return q;
}

TEST(GridTest, FromStep) {
  EXPECT_EQ(Grid::FromStep(0.01).divisions, 100);
  EXPECT_EQ(Grid::FromStep(0.05).divisions, 20);
  EXPECT_EQ(Grid::FromStep(0.01).size(), 99);
  EXPECT_THROW(Grid::FromStep(0.03), Error);
  EXPECT_THROW(Grid::FromStep(0.0), Error);
  EXPECT_THROW(Grid::FromStep(1e-6), Error);
  EXPECT_EQ(kGrid.IndexOf(0.25), 25);
  EXPECT_EQ(kGrid.IndexOf(0.255), -1);
}

TEST(EnumerateTest, SkipsInvalidMembers) {
  const auto warner = EnumerateCandidates(DesignFamily::Of(DesignKind::kWarner), kGrid);
  EXPECT_EQ(warner.size(), 98u);  // p = 0.5 dropped
  const auto kuk = EnumerateCandidates(DesignFamily::Of(DesignKind::kKuk), Grid::FromStep(0.1));
  EXPECT_EQ(kuk.size(), 81u - 9u);
  const auto frd = EnumerateCandidates(DesignFamily::Of(DesignKind::kForcedResponse), Grid::FromStep(0.1));
  EXPECT_EQ(frd.size(), 36u);  // p1 + p2 < 1
}

TEST(SolveBudgetTest, FrozenRoots) {
  auto roots = [](const DesignFamily& f) {
    std::vector<double> xs;
    for (const DesignSpec& s : SolveParamForBudget(f, 1.0)) xs.push_back(s.primary());
    return xs;
  };
  auto warner = roots(DesignFamily::Of(DesignKind::kWarner));
  ASSERT_EQ(warner.size(), 2u);
  EXPECT_NEAR(warner[0], 0.268941, 1e-6);
  EXPECT_NEAR(warner[1], 0.731059, 1e-6);
  auto uqrr = roots(DesignFamily::UnrelatedQuestion(0.6));
  ASSERT_EQ(uqrr.size(), 1u);
  EXPECT_NEAR(uqrr[0], 0.4073416, 1e-7);
  auto twostep = roots(DesignFamily::Of(DesignKind::kTwoStep));
  ASSERT_EQ(twostep.size(), 1u);
  EXPECT_NEAR(twostep[0], 0.4180233, 1e-7);
  auto frd = roots(DesignFamily::WithFixedP2(DesignKind::kForcedResponse, 0.25));
  ASSERT_EQ(frd.size(), 1u);
  EXPECT_NEAR(frd[0], 0.3204295, 1e-7);
  auto kuk = roots(DesignFamily::WithFixedP2(DesignKind::kKuk, 0.25));
  ASSERT_EQ(kuk.size(), 2u);
  EXPECT_NEAR(kuk[0], 0.0919699, 1e-7);
  EXPECT_NEAR(kuk[1], 0.6795705, 1e-7);
}

TEST(SolveBudgetTest, RootsReproduceTheBudget) {
  for (double c : {0.2, 0.5, 1.0, 2.0, 3.0}) {
    for (const DesignFamily& f :
         {DesignFamily::Of(DesignKind::kWarner), DesignFamily::UnrelatedQuestion(0.3),
          DesignFamily::Of(DesignKind::kTwoStep),
          DesignFamily::WithFixedP2(DesignKind::kForcedResponse, 0.1),
          DesignFamily::WithFixedP2(DesignKind::kKuk, 0.4)}) {
      std::vector<DesignSpec> specs;
      try {
        specs = SolveParamForBudget(f, c);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kNoSolution);
        continue;
      }
      for (const DesignSpec& s : specs) EXPECT_NEAR(PrivacyBudget(s), c, 1e-9);
    }
  }
}

TEST(SolveBudgetTest, TwoStepCannotGoBelowLogTwo) {
  try {
    SolveParamForBudget(DesignFamily::Of(DesignKind::kTwoStep), 0.5);
    FAIL() << "expected no solution";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoSolution);
  }
}

TEST(SolvePowerTest, FrozenCrossings) {
  auto warner = SolveParamForPower(DesignFamily::Of(DesignKind::kWarner), kMid, 1000, 0.8);
  ASSERT_EQ(warner.size(), 2u);
  EXPECT_NEAR(warner[0], 0.284767, 1e-6);
  EXPECT_NEAR(warner[1], 0.715233, 1e-6);
  auto uqrr = SolveParamForPower(DesignFamily::UnrelatedQuestion(0.6), kMid, 1000, 0.8);
  ASSERT_EQ(uqrr.size(), 1u);
  EXPECT_NEAR(uqrr[0], 0.439133, 1e-6);
  auto twostep = SolveParamForPower(DesignFamily::Of(DesignKind::kTwoStep), kMid, 1000, 0.8);
  ASSERT_EQ(twostep.size(), 1u);
  EXPECT_NEAR(twostep[0], 0.419276, 1e-6);
}

TEST(FormatIntervalsTest, Rendering) {
  Interval a{0.01, 0.28, 0.0, 0.2847, true, false};
  Interval b{0.72, 0.99, 0.7152, 1.0, false, true};
  EXPECT_EQ(FormatIntervals({a, b}), "(0.00, 0.28] \xE2\x88\xAA [0.72, 1.00)");
  EXPECT_EQ(FormatIntervals({}), "\xE2\x88\x85");
}

TEST(MergeRunsTest, InvalidPointsDoNotBreakRuns) {
  // index:                         0  1  2  3   4  5  6
  std::vector<signed char> state{-1, 1, 1, -1, 1, 0, 1};
  const auto runs = internal::MergeRuns(state);
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0], std::make_pair(1, 4));
  EXPECT_EQ(runs[1], std::make_pair(6, 6));
}

TEST(FeasibleRegionTest, WarnerPowerBands) {
  const Region1d r =
      FeasibleRegion1d(DesignFamily::Of(DesignKind::kWarner), PowerQuery(kLow, 1000), kGrid);
  ASSERT_EQ(r.intervals.size(), 2u);
  EXPECT_TRUE(r.intervals[0].lo_open);
  EXPECT_NEAR(r.intervals[0].hi, 0.28, 1e-12);
  EXPECT_NEAR(r.intervals[1].lo, 0.72, 1e-12);
  EXPECT_TRUE(r.intervals[1].hi_open);
  EXPECT_EQ(FormatIntervals(r.intervals), "(0.00, 0.28] \xE2\x88\xAA [0.72, 1.00)");
  // Refined ends bracket the grid ends.
  EXPECT_GE(r.intervals[0].hi_refined, 0.28);
  EXPECT_LT(r.intervals[0].hi_refined, 0.29);
}

TEST(FeasibleRegionTest, WarnerPrivacyBandSpansInvalidMidpoint) {
  const Region1d r =
      FeasibleRegion1d(DesignFamily::Of(DesignKind::kWarner), PrivacyQuery(1.0), kGrid);
  ASSERT_EQ(r.intervals.size(), 1u);
  EXPECT_NEAR(r.intervals[0].lo, 0.27, 1e-12);
  EXPECT_NEAR(r.intervals[0].hi, 0.73, 1e-12);
  EXPECT_NEAR(r.intervals[0].lo_refined, 0.268941, 1e-6);
  EXPECT_NEAR(r.intervals[0].hi_refined, 0.731059, 1e-6);
}

TEST(FeasibleRegionTest, RefinedEndsAreBudgetRoots) {
  const Region1d r = FeasibleRegion1d(DesignFamily::UnrelatedQuestion(0.6), PrivacyQuery(1.0), kGrid);
  ASSERT_EQ(r.intervals.size(), 1u);
  EXPECT_TRUE(r.intervals[0].lo_open);
  EXPECT_NEAR(r.intervals[0].hi, 0.40, 1e-12);
  EXPECT_NEAR(r.intervals[0].hi_refined, 0.4073416, 1e-6);
}

TEST(FeasibleRegionTest, SliceMatchesOneDimensionalRegion) {
  RegionQuery q = PowerQuery(kLow, 1500);
  q.mode = RegionMode::kBoth;
  q.cap = {2.0, true};
  for (DesignKind kind : {DesignKind::kForcedResponse, DesignKind::kKuk}) {
    const Region2d grid2 = FeasibleRegion2d(kind, q, kGrid);
    for (double p2 : {0.1, 0.25, 0.4}) {
      const Region1d line = FeasibleRegion1d(DesignFamily::WithFixedP2(kind, p2), q, kGrid);
      const auto slice = grid2.Slice(p2);
      ASSERT_EQ(slice.size(), line.intervals.size());
      for (std::size_t i = 0; i < slice.size(); ++i) {
        EXPECT_DOUBLE_EQ(slice[i].lo, line.intervals[i].lo);
        EXPECT_DOUBLE_EQ(slice[i].hi, line.intervals[i].hi);
      }
    }
  }
}

TEST(FeasibleRegionTest, ThreadCountDoesNotChangeResult) {
  RegionQuery q = PowerQuery(kMid, 1000);
  q.mode = RegionMode::kBoth;
  q.cap = {1.0, true};
  const Region2d one = FeasibleRegion2d(DesignKind::kKuk, q, kGrid, {1});
  const Region2d four = FeasibleRegion2d(DesignKind::kKuk, q, kGrid, {4});
  EXPECT_EQ(one.state, four.state);
  EXPECT_GT(one.AcceptedCount(), 0u);
}

TEST(OptimizeFixedNTest, UnrelatedQuestionIsInfeasibleAtCapOne) {
  const DesignSolution sol = OptimizeFixedN(DesignFamily::UnrelatedQuestion(0.6), kMid, 1000,
                                            {1.0, false}, 0.8, kGrid);
  EXPECT_FALSE(sol.feasible);
  ASSERT_TRUE(sol.params_star.has_value());
  EXPECT_NEAR(sol.params_star->p, 0.40, 1e-12);
  EXPECT_LT(sol.achieved_power, 0.8);
  EXPECT_LE(sol.achieved_epsilon, 1.0);
}

TEST(OptimizeFixedNTest, WarnerTieGoesToSmallerP) {
  // p and 1 - p have equal power and budget.
  const DesignSolution sol = OptimizeFixedN(DesignFamily::Of(DesignKind::kWarner), kMid, 1000,
                                            {1.0, false}, 0.8, kGrid);
  EXPECT_TRUE(sol.feasible);
  EXPECT_NEAR(sol.params_star->p, 0.27, 1e-12);
}

TEST(OptimizeFixedNTest, NoAdmittedMember) {
  const DesignSolution sol = OptimizeFixedN(DesignFamily::Of(DesignKind::kTwoStep), kMid, 1000,
                                            {0.5, false}, 0.8, kGrid);
  EXPECT_FALSE(sol.feasible);
  EXPECT_FALSE(sol.params_star.has_value());
  EXPECT_EQ(sol.candidates, 0u);
}

TEST(JointOptimizeTest, MatchesExhaustiveScan) {
  const Grid coarse = Grid::FromStep(0.1);
  for (DesignKind kind : kAllDesignKinds) {
    for (double cap : {1.0, 2.0}) {
      const DesignFamily family =
          kind == DesignKind::kUnrelatedQuestion ? DesignFamily::UnrelatedQuestion(0.6)
                                                 : DesignFamily::Of(kind);
      const DesignSolution sol = JointOptimize(family, kLow, {cap, true}, 0.8, 3000, coarse);
      const auto oracle =
          testing::ExhaustiveScan(kind, 0.6, kLow, cap, true, 0.8, 3000, coarse.divisions);
      EXPECT_EQ(sol.feasible, oracle.n.has_value()) << DesignKindName(kind);
      if (!oracle.n) continue;
      EXPECT_EQ(sol.n_star, oracle.n) << DesignKindName(kind);
      EXPECT_EQ(sol.params_star, oracle.spec) << DesignKindName(kind);
    }
  }
}

TEST(JointOptimizeTest, InfeasibleReportsBestAtLimit) {
  const DesignSolution sol = JointOptimize(DesignFamily::UnrelatedQuestion(0.6), kMid,
                                           {1.0, false}, 0.8, 1000, kGrid);
  EXPECT_FALSE(sol.feasible);
  ASSERT_TRUE(sol.params_star.has_value());
  EXPECT_EQ(sol.n_star, 1000);
}

TEST(CurveTest, PointsMatchDirectEvaluation) {
  const auto pts =
      PowerPrivacyCurve(DesignFamily::Of(DesignKind::kTwoStep), kMid, 1000, Grid::FromStep(0.05));
  ASSERT_EQ(pts.size(), 19u);
  for (const CurvePoint& pt : pts) {
    const DesignSpec s = DesignSpec::TwoStep(pt.p);
    EXPECT_EQ(pt.epsilon, PrivacyBudget(s));
    EXPECT_EQ(pt.power, Power(s, kMid, 1000).power);
  }
  EXPECT_THROW(PowerPrivacyCurve(DesignFamily::Of(DesignKind::kKuk), kMid, 1000, kGrid), Error);
}

}  // namespace
}  // namespace rrdp
