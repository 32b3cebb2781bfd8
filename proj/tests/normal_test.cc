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

#include "rrdp/normal.h"

#include <cmath>

#include <gtest/gtest.h>

namespace rrdp {
namespace {

TEST(NormalTest, KnownQuantiles) {
  EXPECT_NEAR(NormalQuantile(0.975), 1.959963984540054, 1e-13);
  EXPECT_NEAR(NormalQuantile(0.8), 0.8416212335729143, 1e-13);
  EXPECT_NEAR(NormalQuantile(0.5), 0.0, 1e-15);
  EXPECT_NEAR(UpperNormalQuantile(0.025), 1.959963984540054, 1e-13);
  EXPECT_NEAR(NormalQuantile(1e-10), -6.361340902404056, 1e-9);
}

TEST(NormalTest, QuantileInvertsCdf) {
  for (double q = 1e-6; q < 1.0; q += 0.0137) {
    EXPECT_NEAR(NormalCdf(NormalQuantile(q)), q, 1e-14 + 1e-12 * q);
  }
}

TEST(NormalTest, Symmetry) {
  for (double x = -6; x <= 6; x += 0.25) {
    EXPECT_NEAR(NormalCdf(x) + NormalCdf(-x), 1.0, 1e-15);
    EXPECT_NEAR(NormalPdf(x), NormalPdf(-x), 1e-18);
  }
}

TEST(NormalTest, Edges) {
  EXPECT_EQ(NormalQuantile(0.0), -INFINITY);
  EXPECT_EQ(NormalQuantile(1.0), INFINITY);
  EXPECT_THROW(NormalQuantile(-0.1), std::exception);
  EXPECT_THROW(NormalQuantile(1.1), std::exception);
}

}  // namespace
}  // namespace rrdp
