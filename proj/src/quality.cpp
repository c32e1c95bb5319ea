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

#include "cache_auction/quality.hpp"

#include <algorithm>
#include <string>

#include "cache_auction/errors.hpp"
#include "cache_auction/simulation.hpp"

namespace cache_auction {

double optimal_theta_closed_form(const CostFunction &cost, double common_lower_bound)
{
  if (!(common_lower_bound > 0.0)) {
    throw ValidationError("optimal quality needs a positive common lower type bound, got " +
                          std::to_string(common_lower_bound));
  }
  return cost.inverse_derivative(common_lower_bound);
}

QualityResult er_curve(const AuctionInstance &instance, std::vector<double> theta_grid,
                       std::int64_t trials, std::uint64_t seed, int threads)
{
  if (theta_grid.empty()) {
    throw ValidationError("theta grid is empty");
  }
  std::sort(theta_grid.begin(), theta_grid.end());
  QualityResult result;
  result.method = QualityResult::Method::NumericSweep;
  for (double theta : theta_grid) {
    const SimulationReport report = simulate(instance.with_theta(theta), trials, seed, threads);
    result.curve.push_back({theta, report.er_virtual, report.avg_user_utility});
  }
  const auto best = std::max_element(
    result.curve.begin(), result.curve.end(),
    [](const QualityCurvePoint &a, const QualityCurvePoint &b) { return a.er.mean < b.er.mean; });
  result.theta_star = best->theta;
  result.er_at_star = best->er;
  return result;
}

}  // namespace cache_auction
