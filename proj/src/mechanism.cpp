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

#include "cache_auction/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cache_auction/errors.hpp"

namespace cache_auction {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kJumpTolerance = 1e-9;

double consistency_slack(double scale) { return 1e-9 * std::max(1.0, std::abs(scale)); }

}  // namespace

const char *to_string(PaymentBranch branch)
{
  switch (branch) {
  case PaymentBranch::Full:
    return "full";
  case PaymentBranch::Zero:
    return "zero";
  case PaymentBranch::Threshold:
    return "threshold";
  }
  return "unknown";
}

Eigen::VectorXd virtual_valuations(const AuctionInstance &inst, const TypeProfile &t)
{
  if (t.size() != inst.num_users()) {
    throw ValidationError("profile has " + std::to_string(t.size()) + " entries, expected " +
                          std::to_string(inst.num_users()));
  }
  Eigen::VectorXd c(t.size());
  for (Index j = 0; j < t.size(); ++j) {
    c(j) = virtual_valuation(inst.distribution(j), t(j));
  }
  return c;
}

Eigen::VectorXd content_scores(const AuctionInstance &inst, const TypeProfile &t)
{
  const auto &interests = inst.interests();
  return inst.theta() * (interests.membership() * virtual_valuations(inst, t)) -
         inst.delivery_cost() * interests.audience_sizes() - inst.content_prices();
}

double content_score(const AuctionInstance &inst, const TypeProfile &t, Index content)
{
  if (content < 0 || content >= inst.num_contents()) {
    throw ValidationError("content index " + std::to_string(content + 1) + " out of range");
  }
  double score = -inst.content_prices()(content);
  for (Index j : inst.interests().omega(content)) {
    score += inst.theta() * virtual_valuation(inst.distribution(j), t(j)) - inst.delivery_cost();
  }
  return score;
}

Allocation allocate_from_scores(const Eigen::VectorXd &scores)
{
  Allocation allocation;
  allocation.fractions = Eigen::VectorXd::Zero(scores.size());
  if (scores.size() == 0) {
    return allocation;
  }
  Index best = 0;
  for (Index i = 1; i < scores.size(); ++i) {
    if (scores(i) > scores(best)) {
      best = i;
    }
  }
  if (scores(best) > 0.0) {
    allocation.fractions(best) = 1.0;
    allocation.winner = best;
  }
  return allocation;
}

Allocation allocate(const AuctionInstance &inst, const TypeProfile &t)
{
  return allocate_from_scores(content_scores(inst, t));
}

double allocated_fraction(const AuctionInstance &inst, const Allocation &allocation, Index user)
{
  double total = 0.0;
  for (Index i : inst.interests().interests_of(user)) {
    total += allocation.fractions(i);
  }
  return total;
}

PaymentCertificate payment_closed_form(const AuctionInstance &inst, const TypeProfile &t,
                                       Index user)
{
  if (user < 0 || user >= inst.num_users()) {
    throw ValidationError("user index " + std::to_string(user + 1) + " out of range");
  }
  const Eigen::VectorXd scores = content_scores(inst, t);
  return payment_closed_form(inst, t, scores, allocate_from_scores(scores), user);
}

PaymentCertificate payment_closed_form(const AuctionInstance &inst, const TypeProfile &t,
                                       const Eigen::VectorXd &scores,
                                       const Allocation &allocation, Index user)
{
  const auto &interests = inst.interests();
  const auto &mine = interests.interests_of(user);
  const auto &dist = inst.distribution(user);
  const double theta = inst.theta();
  const double h = inst.delivery_cost();
  const double t_j = t(user);
  const double lower = dist.lower();

  PaymentCertificate cert;
  cert.user = user;

  // Best score among contents outside S_j; the empty maximum is -inf and the
  // outer max with 0 (cache nothing) absorbs it.
  double outside = kNegInf;
  for (Index i = 0; i < inst.num_contents(); ++i) {
    if (!interests.interested(user, i)) {
      outside = std::max(outside, scores(i));
    }
  }
  cert.beta = std::max(0.0, outside);

  if (mine.empty()) {
    cert.phi_at_lower = kNegInf;
    cert.phi_at_t = kNegInf;
    cert.branch = PaymentBranch::Zero;
    return cert;
  }

  const double own = theta * virtual_valuation(dist, t_j) - h;
  // phi(t_j) is the best score in S_j; phi(tau) shifts it by the change in
  // the user's own term.
  double best_inside = kNegInf;
  for (Index i : mine) {
    best_inside = std::max(best_inside, scores(i));
  }
  const double rest = best_inside - own;
  cert.phi_at_t = best_inside;
  cert.phi_at_lower = theta * virtual_valuation(dist, lower) - h + rest;

  const double fraction = allocated_fraction(inst, allocation, user);
  if (fraction == 0.0) {
    // Not served at t_j. phi(t_j) < beta except on exact score ties, which
    // the allocation already broke against this user.
    if (cert.phi_at_t > cert.beta + consistency_slack(cert.beta)) {
      throw ConsistencyError("user " + std::to_string(user + 1) +
                             " is unserved although its best content outscores beta");
    }
    cert.branch = PaymentBranch::Zero;
    cert.integral_value = 0.0;
  } else if (cert.phi_at_lower >= cert.beta) {
    cert.branch = PaymentBranch::Full;
    cert.integral_value = t_j - lower;
  } else {
    cert.branch = PaymentBranch::Threshold;
    const double target = (cert.beta + h - rest) / theta;
    const double c_at_t = virtual_valuation(dist, t_j);
    double xi;
    if (target > c_at_t) {
      // Only rounding can push the target past c(t_j) in this branch.
      if (theta * (target - c_at_t) > consistency_slack(cert.beta)) {
        throw ConsistencyError("payment threshold for user " + std::to_string(user + 1) +
                               " lies above the reported type");
      }
      xi = t_j;
    } else {
      xi = inverse_virtual_valuation(dist, target);
    }
    if (xi > t_j + consistency_slack(t_j) || xi < lower - consistency_slack(lower)) {
      throw ConsistencyError("payment threshold for user " + std::to_string(user + 1) +
                             " falls outside [lower, t_j]");
    }
    xi = std::clamp(xi, lower, t_j);
    cert.xi = xi;
    cert.integral_value = t_j - xi;
  }
  cert.payment = theta * t_j * fraction - theta * cert.integral_value;
  return cert;
}

double payment_oracle(const AuctionInstance &inst, const TypeProfile &t, Index user,
                      int grid_points, bool refine_jump)
{
  if (grid_points < 2) {
    throw ValidationError("payment oracle needs at least 2 grid points");
  }
  if (user < 0 || user >= inst.num_users()) {
    throw ValidationError("user index " + std::to_string(user + 1) + " out of range");
  }
  const double lower = inst.distribution(user).lower();
  const double t_j = t(user);
  const double theta = inst.theta();

  TypeProfile probe = t;
  auto served = [&](double tau) {
    probe(user) = tau;
    return allocated_fraction(inst, allocate(inst, probe), user);
  };

  const double at_t = served(t_j);
  if (t_j <= lower) {
    return theta * t_j * at_t;
  }

  std::vector<double> grid(static_cast<std::size_t>(grid_points));
  std::vector<double> step(grid.size());
  for (int k = 0; k < grid_points; ++k) {
    grid[k] = k + 1 == grid_points ? t_j : lower + (t_j - lower) * k / (grid_points - 1);
    step[k] = k + 1 == grid_points ? at_t : served(grid[k]);
  }

  int first_on = -1;
  bool monotone = true;
  for (int k = 0; k < grid_points; ++k) {
    if (step[k] > 0.0 && first_on < 0) {
      first_on = k;
    }
    if (k > 0 && step[k] < step[k - 1]) {
      monotone = false;
    }
  }

  double integral = 0.0;
  if (!refine_jump || !monotone) {
    for (int k = 1; k < grid_points; ++k) {
      integral += 0.5 * (step[k] + step[k - 1]) * (grid[k] - grid[k - 1]);
    }
  } else if (first_on < 0) {
    integral = 0.0;
  } else if (first_on == 0) {
    integral = t_j - lower;
  } else {
    double lo = grid[first_on - 1];
    double hi = grid[first_on];
    while (hi - lo > kJumpTolerance) {
      const double mid = 0.5 * (lo + hi);
      if (served(mid) > 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    integral = t_j - 0.5 * (lo + hi);
  }
  return theta * t_j * at_t - theta * integral;
}

MechanismOutcome run_mechanism(const AuctionInstance &inst, const TypeProfile &reports)
{
  inst.check_profile(reports);
  MechanismOutcome outcome;
  const Eigen::VectorXd scores = content_scores(inst, reports);
  outcome.allocation = allocate_from_scores(scores);
  outcome.payments = Eigen::VectorXd::Zero(inst.num_users());
  outcome.certificates.reserve(static_cast<std::size_t>(inst.num_users()));
  for (Index j = 0; j < inst.num_users(); ++j) {
    auto cert = payment_closed_form(inst, reports, scores, outcome.allocation, j);
    outcome.payments(j) = cert.payment;
    outcome.certificates.push_back(cert);
  }
  outcome.virtual_surplus = std::max(0.0, scores.maxCoeff());
  const auto &p = outcome.allocation.fractions;
  outcome.realized_sp_profit = outcome.payments.sum() - p.dot(inst.content_prices()) -
                               inst.delivery_cost() * p.dot(inst.interests().audience_sizes());
  return outcome;
}

double ex_post_utility(const AuctionInstance &inst, const MechanismOutcome &outcome,
                       const TypeProfile &t_true, Index user)
{
  return allocated_fraction(inst, outcome.allocation, user) * inst.theta() * t_true(user) -
         outcome.payments(user);
}

}  // namespace cache_auction
