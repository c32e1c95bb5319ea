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

#include "cache_auction/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cache_auction/errors.hpp"
#include "cache_auction/random.hpp"

namespace cache_auction {

InterestStructure InterestStructure::from_sets(Index num_contents, Index num_users,
                                               std::vector<std::vector<Index>> sets)
{
  if (num_contents < 1 || num_users < 1) {
    throw ValidationError("an instance needs at least one content and one user");
  }
  if (static_cast<Index>(sets.size()) != num_contents) {
    throw ValidationError("expected " + std::to_string(num_contents) + " interest sets, got " +
                          std::to_string(sets.size()));
  }
  InterestStructure s;
  s.interests_.assign(static_cast<std::size_t>(num_users), {});
  s.membership_ = Eigen::MatrixXd::Zero(num_contents, num_users);
  s.audience_sizes_ = Eigen::VectorXd::Zero(num_contents);
  for (Index i = 0; i < num_contents; ++i) {
    auto &set = sets[static_cast<std::size_t>(i)];
    std::sort(set.begin(), set.end());
    for (std::size_t k = 0; k < set.size(); ++k) {
      const Index j = set[k];
      if (j < 0 || j >= num_users) {
        throw ValidationError("interest set of content " + std::to_string(i + 1) +
                              " names user " + std::to_string(j + 1) + " outside [1, " +
                              std::to_string(num_users) + "]");
      }
      if (k > 0 && set[k - 1] == j) {
        throw ValidationError("interest set of content " + std::to_string(i + 1) +
                              " repeats user " + std::to_string(j + 1));
      }
      s.membership_(i, j) = 1.0;
      s.interests_[static_cast<std::size_t>(j)].push_back(i);
    }
    s.audience_sizes_(i) = static_cast<double>(set.size());
  }
  s.omega_ = std::move(sets);
  return s;
}

InterestStructure sample_interest_structure(const PopularityModel &model, Index num_users)
{
  if (num_users < 1) {
    throw ValidationError("num_users must be positive");
  }
  if (model.inclusion_probs.empty()) {
    throw ValidationError("popularity model needs at least one content");
  }
  std::vector<std::vector<Index>> sets;
  sets.reserve(model.inclusion_probs.size());
  for (std::size_t i = 0; i < model.inclusion_probs.size(); ++i) {
    const double q = model.inclusion_probs[i];
    if (!(q >= 0.0 && q <= 1.0)) {
      throw ValidationError("inclusion probability q_" + std::to_string(i + 1) +
                            " must lie in [0, 1]");
    }
    TrialStream stream(model.seed, i);
    auto &set = sets.emplace_back();
    for (Index j = 0; j < num_users; ++j) {
      if (stream.uniform() < q) {
        set.push_back(j);
      }
    }
  }
  const auto num_contents = static_cast<Index>(sets.size());
  return InterestStructure::from_sets(num_contents, num_users, std::move(sets));
}

AuctionInstance::AuctionInstance(InterestStructure interests, Eigen::VectorXd content_prices,
                                 CostFunction cost, double theta,
                                 std::vector<TypeDistribution> distributions,
                                 bool strict_regularity)
  : interests_(std::move(interests))
  , prices_(std::move(content_prices))
  , cost_(std::move(cost))
  , theta_(theta)
  , delivery_cost_(0.0)
  , distributions_(std::move(distributions))
  , strict_regularity_(strict_regularity)
{
  if (interests_.num_contents() < 1 || interests_.num_users() < 1) {
    throw ValidationError("an instance needs at least one content and one user");
  }
  if (prices_.size() != interests_.num_contents()) {
    throw ValidationError("expected " + std::to_string(interests_.num_contents()) +
                          " content prices, got " + std::to_string(prices_.size()));
  }
  for (Index i = 0; i < prices_.size(); ++i) {
    if (!(prices_(i) >= 0.0) || !std::isfinite(prices_(i))) {
      throw ValidationError("content price r_" + std::to_string(i + 1) +
                            " must be finite and nonnegative");
    }
  }
  if (static_cast<Index>(distributions_.size()) != interests_.num_users()) {
    throw ValidationError("expected " + std::to_string(interests_.num_users()) +
                          " type distributions, got " + std::to_string(distributions_.size()));
  }
  if (!(theta_ > 0.0) || !std::isfinite(theta_)) {
    throw ValidationError("delivery quality theta must be positive");
  }
  delivery_cost_ = cost_.value(theta_);
  lower_bounds_.resize(interests_.num_users());
  for (Index j = 0; j < interests_.num_users(); ++j) {
    const auto &dist = distributions_[static_cast<std::size_t>(j)];
    lower_bounds_(j) = dist.lower();
    if (strict_regularity_) {
      const auto report = check_regularity(dist);
      if (!report.regular) {
        throw ValidationError("type distribution of user " + std::to_string(j + 1) +
                              " is not regular");
      }
    }
  }
}

AuctionInstance AuctionInstance::with_theta(double theta) const
{
  return {interests_, prices_, cost_, theta, distributions_, strict_regularity_};
}

AuctionInstance AuctionInstance::with_cost(CostFunction cost) const
{
  return {interests_, prices_, std::move(cost), theta_, distributions_, strict_regularity_};
}

AuctionInstance AuctionInstance::with_prices(Eigen::VectorXd prices) const
{
  return {interests_, std::move(prices), cost_, theta_, distributions_, strict_regularity_};
}

AuctionInstance AuctionInstance::with_interests(InterestStructure interests) const
{
  return {std::move(interests), prices_, cost_, theta_, distributions_, strict_regularity_};
}

AuctionInstance AuctionInstance::with_distributions(
  std::vector<TypeDistribution> distributions) const
{
  return {interests_, prices_, cost_, theta_, std::move(distributions), strict_regularity_};
}

void AuctionInstance::check_profile(const TypeProfile &profile) const
{
  if (profile.size() != num_users()) {
    throw ValidationError("profile has " + std::to_string(profile.size()) + " entries, expected " +
                          std::to_string(num_users()));
  }
  for (Index j = 0; j < num_users(); ++j) {
    if (!distribution(j).contains(profile(j))) {
      throw ValidationError("type of user " + std::to_string(j + 1) +
                            " lies outside its support");
    }
  }
}

bool AuctionInstance::operator==(const AuctionInstance &other) const
{
  return interests_ == other.interests_ && prices_ == other.prices_ && cost_ == other.cost_ &&
         theta_ == other.theta_ && distributions_ == other.distributions_;
}

AuctionInstance build_instance(const InstanceConfig &config)
{
  if (config.num_contents < 1 || config.num_users < 1) {
    throw ValidationError("num_contents and num_users must be at least 1");
  }
  if (!config.cost) {
    throw ValidationError("instance config is missing a cost function");
  }
  InterestStructure interests;
  if (const auto *sets = std::get_if<std::vector<std::vector<int>>>(&config.interests)) {
    if (static_cast<Index>(sets->size()) != config.num_contents) {
      throw ValidationError("expected " + std::to_string(config.num_contents) +
                            " interest sets, got " + std::to_string(sets->size()));
    }
    std::vector<std::vector<Index>> zero_based;
    zero_based.reserve(sets->size());
    for (const auto &set : *sets) {
      auto &out = zero_based.emplace_back();
      for (int user : set) {
        out.push_back(static_cast<Index>(user) - 1);
      }
    }
    interests =
      InterestStructure::from_sets(config.num_contents, config.num_users, std::move(zero_based));
  } else {
    const auto &model = std::get<PopularityModel>(config.interests);
    if (static_cast<Index>(model.inclusion_probs.size()) != config.num_contents) {
      throw ValidationError("popularity model lists " +
                            std::to_string(model.inclusion_probs.size()) +
                            " probabilities for " + std::to_string(config.num_contents) +
                            " contents");
    }
    interests = sample_interest_structure(model, config.num_users);
  }
  Eigen::VectorXd prices = Eigen::Map<const Eigen::VectorXd>(
    config.content_prices.data(), static_cast<Index>(config.content_prices.size()));
  return {std::move(interests), std::move(prices), *config.cost,
          config.theta,         config.distributions, config.strict_regularity};
}

}  // namespace cache_auction
