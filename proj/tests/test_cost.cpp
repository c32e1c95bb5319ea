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

#include "cache_auction/cost.hpp"
#include "cache_auction/errors.hpp"

namespace ca = cache_auction;

namespace {

std::vector<double> log_grid(double lo, double hi, int points)
{
  std::vector<double> out;
  for (int k = 0; k < points; ++k) {
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (points - 1)));
  }
  return out;
}

void expect_round_trip(const ca::CostFunction &h)
{
  for (double y : log_grid(1e-3, 1e3, 61)) {
    const double theta = h.inverse_derivative(y);
    EXPECT_LE(std::abs(h.derivative(theta) - y), 1e-10) << "y = " << y;
  }
}

}  // namespace

TEST(CostFunction, QuadraticValues)
{
  const auto h = ca::CostFunction::quadratic(0.1);
  EXPECT_DOUBLE_EQ(h(1.0), 0.1);
  EXPECT_DOUBLE_EQ(h(5.0), 2.5);
  EXPECT_DOUBLE_EQ(h.derivative(5.0), 1.0);
  EXPECT_DOUBLE_EQ(h.inverse_derivative(1.0), 5.0);
  EXPECT_DOUBLE_EQ(h(0.0), 0.0);
}

TEST(CostFunction, PowerValues)
{
  const auto h = ca::CostFunction::power(0.5, 3.0);
  EXPECT_DOUBLE_EQ(h(2.0), 4.0);
  EXPECT_DOUBLE_EQ(h.derivative(2.0), 6.0);
  EXPECT_NEAR(h.inverse_derivative(6.0), 2.0, 1e-12);
}

TEST(CostFunction, CustomPolynomial)
{
  // h = 0.2 t^2 + 0.05 t^3
  const auto h = ca::CostFunction::custom({0.0, 0.0, 0.2, 0.05});
  EXPECT_NEAR(h(2.0), 0.8 + 0.4, 1e-15);
  EXPECT_NEAR(h.derivative(2.0), 0.8 + 0.6, 1e-15);
  EXPECT_NEAR(h.inverse_derivative(1.4), 2.0, 1e-9);
}

TEST(CostFunction, InverseDerivativeRoundTripOnLogGrid)
{
  expect_round_trip(ca::CostFunction::quadratic(0.1));
  expect_round_trip(ca::CostFunction::quadratic(3.0));
  expect_round_trip(ca::CostFunction::power(0.2, 1.5));
  expect_round_trip(ca::CostFunction::power(2.0, 4.0));
  expect_round_trip(ca::CostFunction::custom({0.0, 0.0, 0.2, 0.05}));
  expect_round_trip(ca::CostFunction::custom({0.0, 0.0, 0.0, 0.0, 1e-3}));
}

TEST(CostFunction, RejectsShapeViolations)
{
  EXPECT_THROW(ca::CostFunction::quadratic(0.0), ca::ValidationError);
  EXPECT_THROW(ca::CostFunction::quadratic(-1.0), ca::ValidationError);
  EXPECT_THROW(ca::CostFunction::power(1.0, 1.0), ca::ValidationError);
  EXPECT_THROW(ca::CostFunction::custom({1.0, 0.0, 1.0}), ca::ValidationError);
  EXPECT_THROW(ca::CostFunction::custom({0.0, 1.0, 1.0}), ca::ValidationError);
  EXPECT_THROW(ca::CostFunction::custom({0.0, 0.0, -1.0}), ca::ValidationError);
  EXPECT_THROW(ca::CostFunction::custom({0.0, 0.0}), ca::ValidationError);
  EXPECT_THROW(ca::CostFunction::custom({0.0, 0.0, 0.0}), ca::ValidationError);
}

TEST(CostFunction, WithAlphaRescales)
{
  const auto h = ca::CostFunction::quadratic(0.1).with_alpha(0.4);
  EXPECT_DOUBLE_EQ(h(1.0), 0.4);
  EXPECT_EQ(h, ca::CostFunction::quadratic(0.4));
}
