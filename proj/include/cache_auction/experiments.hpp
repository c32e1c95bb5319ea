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
#include <optional>
#include <string>
#include <vector>

#include "cache_auction/io.hpp"
#include "cache_auction/model.hpp"
#include "cache_auction/simulation.hpp"

namespace cache_auction {

/// Content prices used by every reference scenario.
inline const std::vector<double> kReferencePrices = {4.2036, 1.2714, 4.0714};

/// m = 3, n = 10, fixed audiences, h = 0.1 theta^2, theta = 1 and
/// uniform types on [1 + 0.1(j-1), 4 + 0.1(j-1)].
AuctionInstance section4_uniform();
/// Same market with exponential types of rate 1 / (10 + 0.4(j-1)).
AuctionInstance section4_exponential();

struct HomogeneousParams
{
  Index num_users = 100;
  std::vector<double> inclusion_probs = {0.7, 0.5, 0.4};
  std::uint64_t seed = 1;
  TypeDistribution distribution = TypeDistribution::uniform(1.0, 4.0);
  CostFunction cost = CostFunction::quadratic(0.1);
  double theta = 1.0;
  std::vector<double> content_prices = kReferencePrices;
};

/// i.i.d. types and audiences sampled with per-content inclusion
/// probabilities.
AuctionInstance homogeneous(const HomogeneousParams &params);

/// {"family": "section4_uniform" | "section4_exponential" | "homogeneous", ...}
/// Homogeneous accepts num_users, q, seed, distribution, cost, theta and
/// content_prices, each defaulting to HomogeneousParams.
AuctionInstance generate_instance(const Json &params);

/// Inclusive "a:b:step" range. Throws ValidationError on a non-positive
/// step or b < a.
std::vector<double> parse_range(const std::string &text);

enum class SweepParam { ExpectedType, SupportWidth, Lambda, PopularityK, NumUsers, Alpha, Epsilon };

SweepParam parse_sweep_param(const std::string &name);
const char *to_string(SweepParam param);

struct SweepOptions
{
  /// Support width kept fixed while the expected type moves.
  double width = 3.0;
  /// Mean kept fixed while the support width moves.
  double center = 5.0;
  /// Seed for resampled audiences (popularity_k, num_users).
  std::uint64_t structure_seed = 7;
};

/// The market used at one sweep point:
///   expected_type  all users uniform [v - width/2, v + width/2]
///   support_width  all users uniform [center - v/2, center + v/2]
///   lambda         all users exponential(v)
///   popularity_k   every audience is k = v users picked at random
///   num_users      n = v users, distributions cycled from the base, each
///                  audience a random subset of the base's average share
///   alpha          cost rescaled to alpha = v
/// Epsilon has no instance of its own (see run_sweep).
AuctionInstance sweep_instance(const AuctionInstance &base, SweepParam param, double value,
                               const SweepOptions &options = {});

struct SweepRow
{
  double value = 0.0;
  EstimateWithError er;
  EstimateWithError avg_user_utility;
};

/// Estimates the SP's revenue (realized-profit form) at every value with
/// common random numbers. Epsilon runs the distribution-mismatch experiment
/// on the base: uniform widening for uniform types, rate scaling for
/// exponential ones.
std::vector<SweepRow> run_sweep(const AuctionInstance &base, SweepParam param,
                                const std::vector<double> &values, std::int64_t trials,
                                std::uint64_t seed, int threads = 1,
                                const SweepOptions &options = {});

enum class Trend { NonDecreasing, NonIncreasing };

/// True when every adjacent pair moves the stated way up to
/// sigmas * (combined standard error).
bool monotone_within(const std::vector<SweepRow> &rows, Trend trend,
                     double sigmas = kDefaultSigmas);

CsvTable sweep_table(const std::vector<SweepRow> &rows, const std::string &value_column);
Json sweep_json(const std::vector<SweepRow> &rows, const std::string &value_column);
CsvTable user_table(const SimulationReport &report);

struct OracleComparison
{
  std::int64_t profiles = 0;
  std::int64_t comparisons = 0;
  double max_abs_difference = 0.0;
  bool passed = false;
};

/// Closed-form payments against the brute-force oracle on random profiles.
OracleComparison compare_payments_to_oracle(const AuctionInstance &inst, std::int64_t profiles,
                                            std::uint64_t seed, double tolerance = 1e-6,
                                            int grid_points = 200);

struct MonotonicityCheck
{
  std::int64_t sweeps = 0;
  std::int64_t violations = 0;
  bool passed() const { return violations == 0; }
};

/// For random profiles and every user, sweeps the user's own report upward
/// and checks that the served fraction never drops.
MonotonicityCheck check_allocation_monotonicity(const AuctionInstance &inst,
                                                std::int64_t profiles, std::uint64_t seed,
                                                int grid_points = 50);

struct CheckResult
{
  std::string name;
  bool passed = false;
  Json detail;
};

struct VerifyOptions
{
  std::int64_t trials = kDefaultTrials;
  std::uint64_t seed = 1;
  double sigmas = kDefaultSigmas;
  int threads = 1;
  int type_grid = 5;
  int report_grid = 5;
  std::int64_t oracle_profiles = 1000;
};

/// Runs the named property checks: ic, ir, oracle, monotonicity, prop4,
/// revenue-forms.
std::vector<CheckResult> run_checks(const AuctionInstance &inst,
                                    const std::vector<std::string> &checks,
                                    const VerifyOptions &options);

struct ExperimentConfig
{
  std::string name;
  /// Exactly one of these; named experiments fill in their default
  /// generator when neither is given.
  std::optional<Json> instance;
  std::optional<Json> generator;
  std::optional<SweepParam> sweep_param;
  std::optional<std::string> sweep_range;
  std::int64_t trials = kDefaultTrials;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string output_dir = ".";
  std::string format = "csv";
  SweepOptions sweep_options;
};

ExperimentConfig experiment_config_from_json(const Json &doc);

struct ExperimentResult
{
  std::vector<std::string> files;
  std::string summary;
};

/// fig2_users, fig3_distributions, fig4_theta, fig5_popularity,
/// fig6_numusers, fig7_alpha, fig8_mismatch or custom.
ExperimentResult run_experiment(const ExperimentConfig &config);

}  // namespace cache_auction
