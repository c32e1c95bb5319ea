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

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "cache_auction/cost.hpp"
#include "cache_auction/distributions.hpp"

namespace cache_auction {

using Index = Eigen::Index;
/// One value per user: a realization of types or a vector of reports.
using TypeProfile = Eigen::VectorXd;

/// Who is interested in what. Indices are 0-based here; the 1-based form
/// only appears at the JSON boundary.
///
/// The same relation is kept three ways: omega(i) lists the users interested
/// in content i, interests_of(j) lists the contents user j cares about, and
/// membership() is the dense m x n 0/1 incidence matrix used for scoring.
class InterestStructure
{
public:
  InterestStructure() = default;

  /// Sets are 0-based user ids per content. Throws ValidationError on
  /// out-of-range or repeated ids, or when sets.size() != num_contents.
  static InterestStructure from_sets(Index num_contents, Index num_users,
                                     std::vector<std::vector<Index>> sets);

  Index num_contents() const { return static_cast<Index>(omega_.size()); }
  Index num_users() const { return static_cast<Index>(interests_.size()); }

  const std::vector<Index> &omega(Index content) const { return omega_[content]; }
  const std::vector<Index> &interests_of(Index user) const { return interests_[user]; }
  const std::vector<std::vector<Index>> &sets() const { return omega_; }

  bool interested(Index user, Index content) const { return membership_(content, user) != 0.0; }
  const Eigen::MatrixXd &membership() const { return membership_; }
  /// |Omega_i| for every content.
  const Eigen::VectorXd &audience_sizes() const { return audience_sizes_; }

  bool operator==(const InterestStructure &other) const { return omega_ == other.omega_ && num_users() == other.num_users(); }

private:
  std::vector<std::vector<Index>> omega_;
  std::vector<std::vector<Index>> interests_;
  Eigen::MatrixXd membership_;
  Eigen::VectorXd audience_sizes_;
};

/// Each user joins content i's audience independently with probability q_i.
struct PopularityModel
{
  std::vector<double> inclusion_probs;
  std::uint64_t seed = 0;

  bool operator==(const PopularityModel &) const = default;
};

/// Deterministic in (model, num_users). Content i draws from its own stream,
/// so appending a content leaves the earlier audiences unchanged.
InterestStructure sample_interest_structure(const PopularityModel &model, Index num_users);

/// Raw, unvalidated description of a market. 1-based user ids.
struct InstanceConfig
{
  Index num_contents = 0;
  Index num_users = 0;
  std::variant<std::vector<std::vector<int>>, PopularityModel> interests;
  std::vector<double> content_prices;
  std::optional<CostFunction> cost;
  double theta = 1.0;
  std::vector<TypeDistribution> distributions;
  /// Reject instances whose distributions fail the regularity scan.
  bool strict_regularity = false;
};

/// The full market. Immutable once built; the with_* helpers return
/// revalidated copies.
class AuctionInstance
{
public:
  AuctionInstance(InterestStructure interests, Eigen::VectorXd content_prices, CostFunction cost,
                  double theta, std::vector<TypeDistribution> distributions,
                  bool strict_regularity = false);

  Index num_contents() const { return interests_.num_contents(); }
  Index num_users() const { return interests_.num_users(); }

  const InterestStructure &interests() const { return interests_; }
  const Eigen::VectorXd &content_prices() const { return prices_; }
  const CostFunction &cost() const { return cost_; }
  double theta() const { return theta_; }
  /// h(theta), cached.
  double delivery_cost() const { return delivery_cost_; }
  const std::vector<TypeDistribution> &distributions() const { return distributions_; }
  const TypeDistribution &distribution(Index user) const { return distributions_[user]; }
  /// Lower support bound of every user.
  const Eigen::VectorXd &lower_bounds() const { return lower_bounds_; }

  AuctionInstance with_theta(double theta) const;
  AuctionInstance with_cost(CostFunction cost) const;
  AuctionInstance with_prices(Eigen::VectorXd prices) const;
  AuctionInstance with_interests(InterestStructure interests) const;
  AuctionInstance with_distributions(std::vector<TypeDistribution> distributions) const;

  /// Throws ValidationError unless every t_j lies in user j's support.
  void check_profile(const TypeProfile &profile) const;

  bool operator==(const AuctionInstance &other) const;

private:
  InterestStructure interests_;
  Eigen::VectorXd prices_;
  CostFunction cost_;
  double theta_;
  double delivery_cost_;
  std::vector<TypeDistribution> distributions_;
  Eigen::VectorXd lower_bounds_;
  bool strict_regularity_;
};

AuctionInstance build_instance(const InstanceConfig &config);

}  // namespace cache_auction
