// Copyright 2026 The cache-auction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "cache_auction/errors.hpp"
#include "cache_auction/experiments.hpp"
#include "cache_auction/quality.hpp"

namespace ca = cache_auction;

TEST(OptimalTheta, ClosedForm)
{
  EXPECT_DOUBLE_EQ(ca::optimal_theta_closed_form(ca::CostFunction::quadratic(0.1), 1.0), 5.0);
  EXPECT_DOUBLE_EQ(ca::optimal_theta_closed_form(ca::CostFunction::quadratic(0.25), 1.0), 2.0);
  EXPECT_DOUBLE_EQ(ca::optimal_theta_closed_form(ca::CostFunction::quadratic(0.2), 3.0), 7.5);
  // h = 0.1 t^3: h' = 0.3 t^2 = 1.2 at t = 2.
  EXPECT_NEAR(ca::optimal_theta_closed_form(ca::CostFunction::power(0.1, 3.0), 1.2), 2.0, 1e-12);
  EXPECT_THROW(ca::optimal_theta_closed_form(ca::CostFunction::quadratic(0.1), 0.0),
               ca::ValidationError);
  EXPECT_THROW(ca::optimal_theta_closed_form(ca::CostFunction::quadratic(0.1), -1.0),
               ca::ValidationError);
}

TEST(ErCurve, SinglePointGrid)
{
  const auto r = ca::er_curve(ca::section4_uniform(), {2.0}, 500, 1);
  ASSERT_EQ(r.curve.size(), 1u);
  EXPECT_EQ(r.theta_star, 2.0);
  EXPECT_EQ(r.method, ca::QualityResult::Method::NumericSweep);
  ASSERT_TRUE(r.er_at_star.has_value());
}

TEST(ErCurve, SortedNonnegativeAndDeterministic)
{
  const auto inst = ca::section4_exponential();
  const auto a = ca::er_curve(inst, {3.0, 1.0, 2.0}, 1000, 4);
  const auto b = ca::er_curve(inst, {1.0, 2.0, 3.0}, 1000, 4);
  ASSERT_EQ(a.curve.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(a.curve[k].theta, static_cast<double>(k + 1));
    EXPECT_GE(a.curve[k].er.mean, 0.0);
    EXPECT_EQ(a.curve[k].er.mean, b.curve[k].er.mean);
  }
}

TEST(ErCurve, LargeMarketArgmaxNearClosedForm)
{
  const auto inst = ca::homogeneous({});
  std::vector<double> grid;
  for (int k = 1; k <= 10; ++k) grid.push_back(k);
  const auto r = ca::er_curve(inst, grid, 4000, 1);
  const double closed = ca::optimal_theta_closed_form(inst.cost(), 1.0);
  EXPECT_LE(std::abs(r.theta_star - closed), 1.0);
}

// For many homogeneous users, ER / n approaches q_max (theta a - h(theta)).
TEST(ErCurve, LargeMarketPerUserLimit)
{
  ca::HomogeneousParams params;
  params.num_users = 200;
  const auto inst = ca::homogeneous(params);
  const double theta = 5.0;
  const auto r = ca::er_curve(inst, {theta}, 4000, 2);
  const double limit = 0.7 * (theta * 1.0 - inst.cost()(theta));
  EXPECT_LE(std::abs(r.curve[0].er.mean / 200.0 - limit) / limit, 0.10)
    << r.curve[0].er.mean / 200.0 << " vs " << limit;
}
