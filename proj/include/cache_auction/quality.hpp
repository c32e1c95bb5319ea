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
#include <vector>

#include "cache_auction/cost.hpp"
#include "cache_auction/estimate.hpp"
#include "cache_auction/model.hpp"

namespace cache_auction {

/// Revenue-maximizing delivery quality for many homogeneous users:
/// (h')^{-1}(lower), where `lower` is the common lower support bound.
/// Throws ValidationError unless lower > 0.
double optimal_theta_closed_form(const CostFunction &cost, double common_lower_bound);

struct QualityCurvePoint
{
  double theta = 0.0;
  /// Expected revenue in virtual-surplus form.
  EstimateWithError er;
  EstimateWithError avg_user_utility;
};

struct QualityResult
{
  enum class Method { ClosedForm, NumericSweep };

  double theta_star = 0.0;
  Method method = Method::ClosedForm;
  std::optional<EstimateWithError> er_at_star;
  /// Sorted by theta.
  std::vector<QualityCurvePoint> curve;
};

/// Estimates ER*(theta) on a grid, rebuilding the instance at every theta
/// with the same type draws. theta_star is the grid argmax (ties go to the
/// smaller theta).
QualityResult er_curve(const AuctionInstance &instance, std::vector<double> theta_grid,
                       std::int64_t trials, std::uint64_t seed, int threads = 1);

}  // namespace cache_auction
