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
#include "cache_auction/estimate.hpp"
#include "cache_auction/experiments.hpp"
#include "cache_auction/mechanism.hpp"
#include "cache_auction/simulation.hpp"

namespace ca = cache_auction;

namespace {

ca::AuctionInstance micro()
{
  return {ca::InterestStructure::from_sets(1, 2, {{0, 1}}), Eigen::VectorXd::Ones(1),
          ca::CostFunction::quadratic(0.1), 1.0,
          {ca::TypeDistribution::uniform(1, 4), ca::TypeDistribution::uniform(2, 5)}};
}

bool same(const ca::EstimateWithError &a, const ca::EstimateWithError &b)
{
  return a.mean == b.mean && a.std_error == b.std_error && a.trials == b.trials;
}

}  // namespace

TEST(RunningStat, MergeMatchesSequential)
{
  ca::RunningStat all, left, right;
  for (int k = 0; k < 1000; ++k) {
    const double x = std::sin(k) * 10 + k * 0.01;
    all.add(x);
    (k < 377 ? left : right).add(x);
  }
  left.merge(right);
  EXPECT_NEAR(left.estimate().mean, all.estimate().mean, 1e-12);
  EXPECT_NEAR(left.estimate().std_error, all.estimate().std_error, 1e-12);
  EXPECT_EQ(left.count(), 1000);
}

TEST(Simulate, ReferenceUniformAllocation)
{
  const auto r = ca::simulate(ca::section4_uniform(), 10000, 1);
  const double expected[] = {0.17, 0.657, 0.146};
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(r.expected_allocation[i].mean, expected[i], 0.03);
    EXPECT_GE(r.expected_allocation[i].mean, 0.0);
    total += r.expected_allocation[i].mean;
  }
  EXPECT_NEAR(total + r.idle_fraction.mean, 1.0, 1e-12);
  EXPECT_EQ(r.zero_payment_violations, 0);
  EXPECT_EQ(r.payment_bound_violations, 0);
  for (const auto &u : r.per_user) {
    EXPECT_GE(u.expected_utility.mean, -3 * u.expected_utility.std_error);
  }
}

TEST(Simulate, HugePricesGiveExactZeroRevenue)
{
  const auto inst = ca::section4_uniform().with_prices(Eigen::VectorXd::Constant(3, 1e6));
  const auto r = ca::simulate(inst, 2000, 4);
  EXPECT_EQ(r.er_direct.mean, 0.0);
  EXPECT_EQ(r.er_virtual.mean, 0.0);
  EXPECT_EQ(r.idle_fraction.mean, 1.0);
  for (const auto &e : r.expected_allocation) EXPECT_EQ(e.mean, 0.0);
}

TEST(Simulate, ThreadCountDoesNotChangeResults)
{
  const auto inst = ca::section4_exponential();
  const auto a = ca::simulate(inst, 3000, 9, 1);
  const auto b = ca::simulate(inst, 3000, 9, 4);
  EXPECT_TRUE(same(a.er_direct, b.er_direct));
  EXPECT_TRUE(same(a.er_virtual, b.er_virtual));
  EXPECT_TRUE(same(a.idle_fraction, b.idle_fraction));
  for (int j = 0; j < 10; ++j) {
    EXPECT_TRUE(same(a.per_user[j].expected_payment, b.per_user[j].expected_payment));
  }
}

TEST(Simulate, RevenueFormsAgree)
{
  for (const auto &inst : {ca::section4_uniform(), ca::section4_exponential(), micro()}) {
    const auto r = ca::simulate(inst, 10000, 2);
    EXPECT_LE(std::abs(r.er_direct.mean - r.er_virtual.mean),
              3 * ca::combined_std_error(r.er_direct, r.er_virtual));
  }
}

// Two users, one content: ER is a 2-d integral, cheap by midpoint rule.
// The virtual form integrates max(0, score); the direct form integrates
// realized profit using the closed-form payments.
TEST(Simulate, TwoUserQuadratureCrossCheck)
{
  const auto inst = micro();
  const int k = 400;
  double virtual_form = 0.0, direct_form = 0.0;
  Eigen::VectorXd t(2);
  for (int a = 0; a < k; ++a) {
    t(0) = 1.0 + 3.0 * (a + 0.5) / k;
    for (int b = 0; b < k; ++b) {
      t(1) = 2.0 + 3.0 * (b + 0.5) / k;
      virtual_form += std::max(0.0, ca::content_score(inst, t, 0));
      direct_form += ca::run_mechanism(inst, t).realized_sp_profit;
    }
  }
  virtual_form /= k * k;
  direct_form /= k * k;
  // Closed form: E[max(0, c1 + c2 - 1.2)] with c1 ~ U[-2,4], c2 ~ U[-1,5].
  // The sum S = c1 + c2 - 1.2 is triangular on [-4.2, 7.8] with peak 1.8;
  // E[S+] = integral of s * density over [0, 7.8].
  auto density = [](double s) {
    return s < 1.8 ? (s + 4.2) / 36.0 : (7.8 - s) / 36.0;
  };
  double exact = 0.0;
  const int q = 200000;
  for (int i = 0; i < q; ++i) {
    const double s = 7.8 * (i + 0.5) / q;
    exact += s * density(s) * 7.8 / q;
  }
  EXPECT_NEAR(virtual_form, exact, 2e-4);
  EXPECT_NEAR(direct_form, exact, 2e-2);
  const auto mc = ca::simulate(inst, 20000, 5);
  EXPECT_LE(std::abs(mc.er_direct.mean - exact), 3 * mc.er_direct.std_error + 2e-4);
  EXPECT_LE(std::abs(mc.er_virtual.mean - exact), 3 * mc.er_virtual.std_error + 2e-4);
}

TEST(Interim, LowerEndUtilityIsZeroAndFractionNondecreasing)
{
  const auto inst = ca::section4_uniform();
  for (ca::Index j : {0, 4, 9}) {
    const double lo = inst.distribution(j).lower();
    const auto at_lower = ca::interim_quantities(inst, j, lo, lo, 10000, 3);
    EXPECT_LE(std::abs(at_lower.utility.mean), 3 * at_lower.utility.std_error + 1e-12);
    std::optional<ca::EstimateWithError> previous;
    for (double tau : ca::user_type_grid(inst.distribution(j), 7)) {
      const auto e = ca::interim_quantities(inst, j, tau, tau, 10000, 3).fraction;
      if (previous) {
        EXPECT_GE(e.mean, previous->mean - 3 * ca::combined_std_error(e, *previous));
      }
      previous = e;
    }
  }
  EXPECT_THROW(ca::interim_quantities(inst, 0, 0.5, 2.0, 10, 1), ca::ValidationError);
}

TEST(Interim, CommonRandomNumbersMakeSameReportIdentical)
{
  const auto inst = ca::section4_exponential();
  const auto a = ca::interim_quantities(inst, 2, 8.0, 8.0, 2000, 8);
  const auto b = ca::interim_quantities(inst, 2, 8.0, 8.0, 2000, 8);
  EXPECT_TRUE(same(a.utility, b.utility));
  EXPECT_TRUE(same(a.payment, b.payment));
}

TEST(VerifyIC, UserOneHasNoViolations)
{
  const auto report = ca::verify_ic(ca::section4_uniform(), 0, 5, 5, 10000, 1);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.pairs.size(), 25u);
  for (const auto &pair : report.pairs) {
    if (pair.report == pair.true_type) {
      EXPECT_EQ(pair.margin.mean, 0.0);
      EXPECT_EQ(pair.margin.std_error, 0.0);
    }
  }
}

TEST(VerifyIC, HalvedPaymentsAreCaught)
{
  const auto base = ca::closed_form_payment_rule();
  ca::PaymentRule halved = [base](const ca::AuctionInstance &inst, const ca::TypeProfile &t,
                                  const Eigen::VectorXd &scores, const ca::Allocation &a,
                                  ca::Index j) { return 0.5 * base(inst, t, scores, a, j); };
  int violations = 0;
  const auto inst = ca::section4_uniform();
  for (ca::Index j = 0; j < inst.num_users(); ++j) {
    violations += ca::verify_ic(inst, j, 5, 5, 10000, 1, 3.0, halved).violations;
  }
  EXPECT_GE(violations, 1);
}

TEST(VerifyIR, ReferencePasses)
{
  const auto report = ca::verify_ir(ca::section4_uniform(), 10000, 1);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.realization_violations, 0);
  EXPECT_GT(report.realizations_checked, 0);
  for (const auto &u : report.users) {
    EXPECT_TRUE(u.lower_binding);
  }
}

TEST(VerifyIR, EmptyInterestUtilityIsExactlyZero)
{
  const ca::AuctionInstance inst{ca::InterestStructure::from_sets(1, 2, {{0}}),
                                 Eigen::VectorXd::Constant(1, 0.5),
                                 ca::CostFunction::quadratic(0.1), 1.0,
                                 {ca::TypeDistribution::uniform(1, 4),
                                  ca::TypeDistribution::uniform(1, 4)}};
  const auto report = ca::verify_ir(inst, 2000, 1);
  EXPECT_TRUE(report.passed());
  for (const auto &p : report.users[1].points) {
    EXPECT_EQ(p.utility.mean, 0.0);
    EXPECT_EQ(p.utility.std_error, 0.0);
  }
}

TEST(Mismatch, ZeroEpsilonReproducesSimulate)
{
  const auto inst = ca::section4_uniform();
  const auto er = ca::simulate_mismatch(inst, {0.0, ca::MismatchConfig::Mode::UniformWiden}, 4000, 6);
  EXPECT_TRUE(same(er, ca::simulate(inst, 4000, 6).er_direct));
  const auto ex = ca::section4_exponential();
  const auto er2 =
    ca::simulate_mismatch(ex, {0.0, ca::MismatchConfig::Mode::ExponentialRateScale}, 4000, 6);
  EXPECT_TRUE(same(er2, ca::simulate(ex, 4000, 6).er_direct));
}

TEST(Mismatch, EstimatedDistributions)
{
  const std::vector<ca::TypeDistribution> truth{ca::TypeDistribution::uniform(1, 4)};
  const auto wide = ca::estimated_distributions(truth, {0.5, ca::MismatchConfig::Mode::UniformWiden});
  EXPECT_EQ(wide[0], ca::TypeDistribution::uniform(0.25, 4.75));
  EXPECT_THROW(ca::estimated_distributions(truth, {-0.1, ca::MismatchConfig::Mode::UniformWiden}),
               ca::ValidationError);
  const std::vector<ca::TypeDistribution> ex{ca::TypeDistribution::exponential(0.1)};
  const auto scaled =
    ca::estimated_distributions(ex, {-0.5, ca::MismatchConfig::Mode::ExponentialRateScale});
  EXPECT_NEAR(scaled[0].rate(), 0.05, 1e-15);
  EXPECT_THROW(
    ca::estimated_distributions(ex, {-1.0, ca::MismatchConfig::Mode::ExponentialRateScale}),
    ca::ValidationError);
  EXPECT_THROW(ca::estimated_distributions(ex, {0.5, ca::MismatchConfig::Mode::UniformWiden}),
               ca::ValidationError);
}

TEST(UserTypeGrid, CoversSupportOrQuantiles)
{
  const auto g = ca::user_type_grid(ca::TypeDistribution::uniform(1, 4), 5);
  EXPECT_EQ(g, (std::vector<double>{1.0, 1.75, 2.5, 3.25, 4.0}));
  const auto e = ca::TypeDistribution::exponential(0.1);
  const auto q = ca::user_type_grid(e, 3);
  EXPECT_NEAR(e.cdf(q.front()), 0.01, 1e-12);
  EXPECT_NEAR(e.cdf(q.back()), 0.99, 1e-12);
}
