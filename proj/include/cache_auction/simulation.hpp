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

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cache_auction/estimate.hpp"
#include "cache_auction/mechanism.hpp"
#include "cache_auction/model.hpp"
#include "cache_auction/random.hpp"

namespace cache_auction {

/// Default Monte-Carlo sample size and statistical slack (in standard errors).
inline constexpr std::int64_t kDefaultTrials = 10000;
inline constexpr double kDefaultSigmas = 3.0;

/// Draws one profile by inverse CDF, one uniform per user in user order.
/// Profiles that share (seed, trial) share their uniforms, which is what
/// makes the comparisons across scenarios paired.
TypeProfile draw_profile(const std::vector<TypeDistribution> &dists, TrialStream &stream);

/// Evenly spaced type grid for one user: the whole support when bounded,
/// quantile levels [0.01, 0.99] otherwise.
std::vector<double> user_type_grid(const TypeDistribution &dist, int size);

struct UserReport
{
  EstimateWithError expected_payment;
  EstimateWithError expected_utility;
  EstimateWithError expected_fraction;
};

struct SimulationReport
{
  std::int64_t trials = 0;
  /// Realized SP profit (payments minus acquisition and delivery costs).
  EstimateWithError er_direct;
  /// max(0, max_i score_i): the virtual-surplus form of the same revenue.
  EstimateWithError er_virtual;
  /// Per-trial er_direct - er_virtual on the same draws.
  EstimateWithError er_difference;
  std::vector<EstimateWithError> expected_allocation;
  std::vector<UserReport> per_user;
  EstimateWithError idle_fraction;
  /// Mean over users of the realized truthful utility.
  EstimateWithError avg_user_utility;
  /// Realizations where an unserved user was charged a nonzero amount.
  std::int64_t zero_payment_violations = 0;
  /// Realizations with x_j < 0 or x_j > theta * t_j * (served fraction).
  std::int64_t payment_bound_violations = 0;
};

/// Truthful Monte-Carlo run of the mechanism.
SimulationReport simulate(const AuctionInstance &inst, std::int64_t trials, std::uint64_t seed,
                          int threads = 1);

/// Reports from a mechanism built on `mechanism_inst` while true types are
/// drawn from `true_dists` (clamped into the mechanism's supports).
SimulationReport simulate_with_true_types(const AuctionInstance &mechanism_inst,
                                          const std::vector<TypeDistribution> &true_dists,
                                          std::int64_t trials, std::uint64_t seed,
                                          int threads = 1);

struct InterimEstimate
{
  /// v_j(report, true_type)
  EstimateWithError utility;
  /// Expected served fraction at the report.
  EstimateWithError fraction;
  /// Expected payment at the report.
  EstimateWithError payment;
};

/// Interim quantities of one user over draws of everyone else's types.
/// Calls with the same seed reuse the same opponent draws.
InterimEstimate interim_quantities(const AuctionInstance &inst, Index user, double report,
                                   double true_type, std::int64_t trials, std::uint64_t seed,
                                   int threads = 1);

/// Payment of `user` given reports, their scores and the allocation.
using PaymentRule = std::function<double(const AuctionInstance &, const TypeProfile &,
                                         const Eigen::VectorXd &, const Allocation &, Index)>;

/// The mechanism's own payment rule.
PaymentRule closed_form_payment_rule();

struct ICPair
{
  double true_type = 0.0;
  double report = 0.0;
  /// Paired estimate of truthful interim utility minus misreport utility.
  EstimateWithError margin;
  bool violation = false;
};

struct ICReport
{
  Index user = 0;
  std::vector<ICPair> pairs;
  double worst_margin = 0.0;
  int violations = 0;
  bool passed() const { return violations == 0; }
};

/// Checks truthful reporting against every misreport on a grid, using paired
/// opponent draws. A pair violates IC when the margin is below
/// -sigmas * (its standard error).
ICReport verify_ic(const AuctionInstance &inst, Index user, int type_grid_size,
                   int report_grid_size, std::int64_t trials, std::uint64_t seed,
                   double sigmas = kDefaultSigmas, const PaymentRule &rule = {},
                   int threads = 1);

struct IRPoint
{
  double true_type = 0.0;
  EstimateWithError utility;
  bool violation = false;
};

struct IRUserReport
{
  Index user = 0;
  std::vector<IRPoint> points;
  /// Truthful interim utility at the lower support bound; should be 0.
  EstimateWithError at_lower;
  bool lower_binding = true;
};

struct IRReport
{
  std::vector<IRUserReport> users;
  /// Realizations (over all users) breaking 0 <= x_j <= theta t_j sum p.
  std::int64_t realization_violations = 0;
  std::int64_t realizations_checked = 0;
  bool passed() const;
};

IRReport verify_ir(const AuctionInstance &inst, std::int64_t trials, std::uint64_t seed,
                   int grid_size = 5, double sigmas = kDefaultSigmas, int threads = 1);

struct MismatchConfig
{
  enum class Mode { UniformWiden, ExponentialRateScale };
  double epsilon = 0.0;
  Mode mode = Mode::UniformWiden;
};

/// Distributions the SP believes in: uniform supports widened by
/// epsilon * width / 2 on each side, or exponential rates scaled by
/// (1 + epsilon).
std::vector<TypeDistribution> estimated_distributions(const std::vector<TypeDistribution> &truth,
                                                      const MismatchConfig &mismatch);

/// SP revenue when the mechanism runs on estimated distributions but types
/// come from the instance's true ones.
EstimateWithError simulate_mismatch(const AuctionInstance &true_inst,
                                    const MismatchConfig &mismatch, std::int64_t trials,
                                    std::uint64_t seed, int threads = 1);

}  // namespace cache_auction
