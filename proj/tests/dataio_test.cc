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

#include "rrdp/dataio.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "rrdp/simulator.h"
#include "test_util.h"

namespace rrdp {
namespace {

Dataset ParseCountsText(const std::string& text) {
  std::istringstream in(text);
  return ParseCounts(in);
}

ErrorCode CodeOf(const std::string& text, int* line = nullptr) {
  try {
    ParseCountsText(text);
  } catch (const Error& e) {
    if (line) *line = e.line();
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ErrorCode::kInvalidParameter;
}

TEST(ParseCountsTest, ReadsWellFormedFile) {
  const Dataset ds = ParseCountsText(
      "\xEF\xBB\xBF# label: pilot\n"
      "design,p,p1,p2,pi_y,n,yes\n"
      "\n"
      "uqrr,0.4,,,0.6,500,220\n");
  EXPECT_EQ(ds.design, DesignSpec::UnrelatedQuestion(0.4, 0.6));
  EXPECT_EQ(ds.n, 500);
  EXPECT_EQ(ds.yes_count, 220);
  EXPECT_EQ(ds.label, "pilot");
}

TEST(ParseCountsTest, ReportsErrorsWithLineNumbers) {
  int line = 0;
  EXPECT_EQ(CodeOf("", &line), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf("design,p\nwarner,0.3\n", &line), ErrorCode::kParseError);
  EXPECT_EQ(line, 1);
  EXPECT_EQ(CodeOf("design,p,p1,p2,pi_y,n,yes\nwarner,abc,,,,10,3\n", &line),
            ErrorCode::kParseError);
  EXPECT_EQ(line, 2);
  EXPECT_EQ(CodeOf("design,p,p1,p2,pi_y,n,yes\nwarner,0.3,,,,10,11\n", &line),
            ErrorCode::kParseError);
  EXPECT_EQ(CodeOf("design,p,p1,p2,pi_y,n,yes\n# c\nwarner,0.3,,,,10,1\nwarner,0.3,,,,10,1\n", &line),
            ErrorCode::kParseError);
  EXPECT_EQ(line, 4);
  EXPECT_EQ(CodeOf("design,p,p1,p2,pi_y,n,yes\nuqrr,0.3,,,,10,1\n", &line),
            ErrorCode::kInconsistentHeader);
  EXPECT_EQ(CodeOf("design,p,p1,p2,pi_y,n,yes\nwarner,0.5,,,,10,1\n"),
            ErrorCode::kInconsistentHeader);
  EXPECT_EQ(CodeOf("design,p,p1,p2,pi_y,n,yes\ncoin,0.5,,,,10,1\n"), ErrorCode::kParseError);
}

TEST(ParseRecordsTest, CountsOnesAndZeros) {
  std::istringstream in("response\n1\n0\n0\r\n1\n1\n");
  const Dataset ds = ParseRecords(in, DesignSpec::Warner(0.3));
  EXPECT_EQ(ds.n, 5);
  EXPECT_EQ(ds.yes_count, 3);
}

TEST(ParseRecordsTest, RejectsOtherTokens) {
  std::istringstream in("response\n1\nyes\n");
  try {
    ParseRecords(in, DesignSpec::Warner(0.3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_EQ(e.line(), 3);
  }
  std::istringstream empty("response\n");
  EXPECT_THROW(ParseRecords(empty, DesignSpec::Warner(0.3)), Error);
}

TEST(EmitTest, RoundTripsThroughParsers) {
  for (const DesignSpec& spec : testing::SampleDesigns()) {
    const Dataset ds{spec, 321, 123, "round trip"};
    EXPECT_EQ(ParseCountsText(EmitCounts(ds)), ds);
    std::istringstream records(EmitRecords(ds));
    EXPECT_EQ(ParseRecords(records, spec), ds);
  }
  const Dataset direct{DesignSpec::Direct(), 10, 4, ""};
  EXPECT_EQ(ParseCountsText(EmitCounts(direct)), direct);
}

TEST(FixtureTest, ShippedFilesMatchBuiltIns) {
  std::ifstream dq(std::string(RRDP_DATA_DIR) + "/amt_tax_dq.csv");
  ASSERT_TRUE(dq.good());
  EXPECT_EQ(ParseRecords(dq, DesignSpec::Direct()), AmtDirectQuestioning());
  std::ifstream frd(std::string(RRDP_DATA_DIR) + "/amt_tax_frd.csv");
  ASSERT_TRUE(frd.good());
  EXPECT_EQ(ParseCounts(frd), AmtForcedResponse());
}

TEST(AnalyzeTest, TaxReturnExample) {
  const AnalysisReport dq = Analyze(AmtDirectQuestioning());
  EXPECT_NEAR(dq.estimate_raw, 0.1038, 5e-5);
  EXPECT_TRUE(std::isinf(dq.epsilon));
  const AnalysisReport frd = Analyze(AmtForcedResponse());
  EXPECT_NEAR(frd.estimate_raw, 0.139825, 5e-6);
  EXPECT_NEAR(frd.epsilon, 2.302585, 1e-6);
  EXPECT_LT(frd.ci_low, frd.estimate_raw);
  EXPECT_GT(frd.ci_high, frd.estimate_raw);
}

TEST(AnalyzeTest, OutOfRangeEstimateIsKeptRaw) {
  const Dataset ds{DesignSpec::ForcedResponse(0.2, 0.2), 100, 10, ""};
  const AnalysisReport r = Analyze(ds);
  EXPECT_LT(r.estimate_raw, 0.0);
  EXPECT_EQ(r.estimate_clamped, 0.0);
  EXPECT_TRUE(r.out_of_range);
}

TEST(AnalyzeTest, TestUsesNullVariance) {
  const Hypothesis hyp{0.2, 0.3, 0.05};
  const AnalysisReport r = Analyze(AmtForcedResponse(), hyp);
  ASSERT_TRUE(r.test.has_value());
  EXPECT_NEAR(*r.std_error_h0,
              std::sqrt(EstimatorVariance(AmtForcedResponse().design, 0.2, 1602)), 1e-15);
  EXPECT_TRUE(r.test->reject);
}

TEST(AnalyzeTest, RecoversTruthOnSimulatedSurveys) {
  const DesignSpec designs[] = {DesignSpec::Warner(0.269), DesignSpec::UnrelatedQuestion(0.407, 0.6),
                                DesignSpec::ForcedResponse(0.32, 0.25), DesignSpec::Kuk(0.68, 0.25),
                                DesignSpec::TwoStep(0.418)};
  for (const DesignSpec& spec : designs) {
    int covered = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const std::int64_t yes = SimulateResponses(spec, 0.3, 800, 1000 + trial);
      const AnalysisReport r = Analyze(Dataset{spec, 800, yes, ""});
      if (std::fabs(r.estimate_raw - 0.3) <= 4 * r.std_error) ++covered;
    }
    EXPECT_GE(covered, 495) << DesignKindName(spec.kind);
  }
}

}  // namespace
}  // namespace rrdp
