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

#include "cache_auction/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cache_auction/errors.hpp"

namespace cache_auction {

namespace {

struct StatBlock
{
  std::vector<RunningStat> stats;
  std::int64_t zero_payment_violations = 0;
  std::int64_t payment_bound_violations = 0;

  explicit StatBlock(std::size_t size = 0)
    : stats(size)
  {}

  void merge(const StatBlock &other)
  {
    for (std::size_t k = 0; k < stats.size(); ++k) {
      stats[k].merge(other.stats[k]);
    }
    zero_payment_violations += other.zero_payment_violations;
    payment_bound_violations += other.payment_bound_violations;
  }
};

struct Served
{
  double fraction = 0.0;
  double payment = 0.0;
};

Served evaluate_user(const AuctionInstance &inst, const TypeProfile &reports, Index user,
                     const PaymentRule &rule)
{
  const Eigen::VectorXd scores = content_scores(inst, reports);
  const Allocation allocation = allocate_from_scores(scores);
  Served out;
  out.fraction = allocated_fraction(inst, allocation, user);
  out.payment = rule ? rule(inst, reports, scores, allocation, user)
                     : payment_closed_form(inst, reports, scores, allocation, user).payment;
  return out;
}

void check_user(const AuctionInstance &inst, Index user)
{
  if (user < 0 || user >= inst.num_users()) {
    throw ValidationError("user index " + std::to_string(user + 1) + " out of range");
  }
}

void check_trials(std::int64_t trials)
{
  if (trials < 1) {
    throw ValidationError("trials must be at least 1");
  }
}

}  // namespace

TypeProfile draw_profile(const std::vector<TypeDistribution> &dists, TrialStream &stream)
{
  TypeProfile t(static_cast<Index>(dists.size()));
  for (std::size_t j = 0; j < dists.size(); ++j) {
    t(static_cast<Index>(j)) = sample(dists[j], stream);
  }
  return t;
}

std::vector<double> user_type_grid(const TypeDistribution &dist, int size)
{
  if (size < 2) {
    throw ValidationError("type grids need at least 2 points");
  }
  std::vector<double> grid(static_cast<std::size_t>(size));
  for (int k = 0; k < size; ++k) {
    const double s = static_cast<double>(k) / (size - 1);
    if (dist.bounded()) {
      grid[k] = k + 1 == size ? dist.upper() : dist.lower() + s * (dist.upper() - dist.lower());
    } else {
      grid[k] = dist.quantile(0.01 + s * 0.98);
    }
  }
  return grid;
}

SimulationReport simulate(const AuctionInstance &inst, std::int64_t trials, std::uint64_t seed,
                          int threads)
{
  return simulate_with_true_types(inst, inst.distributions(), trials, seed, threads);
}

SimulationReport simulate_with_true_types(const AuctionInstance &mechanism_inst,
                                          const std::vector<TypeDistribution> &true_dists,
                                          std::int64_t trials, std::uint64_t seed, int threads)
{
  check_trials(trials);
  const Index m = mechanism_inst.num_contents();
  const Index n = mechanism_inst.num_users();
  if (static_cast<Index>(true_dists.size()) != n) {
    throw ValidationError("expected one true distribution per user");
  }
  const double theta = mechanism_inst.theta();

  // Layout: direct, virtual, difference, idle, avg utility, m allocations,
  // then (payment, utility, fraction) per user.
  constexpr std::size_t kDirect = 0, kVirtual = 1, kDiff = 2, kIdle = 3, kUtil = 4, kHead = 5;
  const auto alloc_at = [](Index i) { return kHead + static_cast<std::size_t>(i); };
  const auto user_at = [m](Index j, std::size_t field) {
    return kHead + static_cast<std::size_t>(m) + 3 * static_cast<std::size_t>(j) + field;
  };
  const StatBlock init(kHead + static_cast<std::size_t>(m + 3 * n));

  const StatBlock total = run_trials(trials, threads, init, [&](std::int64_t trial, StatBlock &acc) {
    TrialStream stream(seed, static_cast<std::uint64_t>(trial));
    const TypeProfile truth = draw_profile(true_dists, stream);
    TypeProfile reports = truth;
    for (Index j = 0; j < n; ++j) {
      const auto &d = mechanism_inst.distribution(j);
      reports(j) = std::clamp(reports(j), d.lower(), d.upper());
    }
    const MechanismOutcome outcome = run_mechanism(mechanism_inst, reports);

    acc.stats[kDirect].add(outcome.realized_sp_profit);
    acc.stats[kVirtual].add(outcome.virtual_surplus);
    acc.stats[kDiff].add(outcome.realized_sp_profit - outcome.virtual_surplus);
    acc.stats[kIdle].add(1.0 - outcome.allocation.fractions.sum());
    for (Index i = 0; i < m; ++i) {
      acc.stats[alloc_at(i)].add(outcome.allocation.fractions(i));
    }
    double utility_sum = 0.0;
    for (Index j = 0; j < n; ++j) {
      const double fraction = allocated_fraction(mechanism_inst, outcome.allocation, j);
      const double payment = outcome.payments(j);
      const double utility = fraction * theta * truth(j) - payment;
      utility_sum += utility;
      acc.stats[user_at(j, 0)].add(payment);
      acc.stats[user_at(j, 1)].add(utility);
      acc.stats[user_at(j, 2)].add(fraction);
      if (fraction == 0.0 && payment != 0.0) {
        ++acc.zero_payment_violations;
      }
      if (payment < 0.0 || payment > theta * reports(j) * fraction) {
        ++acc.payment_bound_violations;
      }
    }
    acc.stats[kUtil].add(utility_sum / static_cast<double>(n));
  });

  SimulationReport report;
  report.trials = trials;
  report.er_direct = total.stats[kDirect].estimate();
  report.er_virtual = total.stats[kVirtual].estimate();
  report.er_difference = total.stats[kDiff].estimate();
  report.idle_fraction = total.stats[kIdle].estimate();
  report.avg_user_utility = total.stats[kUtil].estimate();
  for (Index i = 0; i < m; ++i) {
    report.expected_allocation.push_back(total.stats[alloc_at(i)].estimate());
  }
  for (Index j = 0; j < n; ++j) {
    report.per_user.push_back({total.stats[user_at(j, 0)].estimate(),
                               total.stats[user_at(j, 1)].estimate(),
                               total.stats[user_at(j, 2)].estimate()});
  }
  report.zero_payment_violations = total.zero_payment_violations;
  report.payment_bound_violations = total.payment_bound_violations;
  return report;
}

InterimEstimate interim_quantities(const AuctionInstance &inst, Index user, double report,
                                   double true_type, std::int64_t trials, std::uint64_t seed,
                                   int threads)
{
  check_user(inst, user);
  check_trials(trials);
  const auto &dist = inst.distribution(user);
  if (!dist.contains(report) || !dist.contains(true_type)) {
    throw ValidationError("report and true type must lie in the user's support");
  }
  const double theta = inst.theta();
  const StatBlock total =
    run_trials(trials, threads, StatBlock(3), [&](std::int64_t trial, StatBlock &acc) {
      TrialStream stream(seed, static_cast<std::uint64_t>(trial));
      TypeProfile reports = draw_profile(inst.distributions(), stream);
      reports(user) = report;
      const Served served = evaluate_user(inst, reports, user, {});
      acc.stats[0].add(theta * true_type * served.fraction - served.payment);
      acc.stats[1].add(served.fraction);
      acc.stats[2].add(served.payment);
    });
  return {total.stats[0].estimate(), total.stats[1].estimate(), total.stats[2].estimate()};
}

PaymentRule closed_form_payment_rule()
{
  return [](const AuctionInstance &inst, const TypeProfile &reports, const Eigen::VectorXd &scores,
            const Allocation &allocation, Index user) {
    return payment_closed_form(inst, reports, scores, allocation, user).payment;
  };
}

ICReport verify_ic(const AuctionInstance &inst, Index user, int type_grid_size,
                   int report_grid_size, std::int64_t trials, std::uint64_t seed, double sigmas,
                   const PaymentRule &rule, int threads)
{
  check_user(inst, user);
  check_trials(trials);
  const auto &dist = inst.distribution(user);
  const auto types = user_type_grid(dist, type_grid_size);
  const auto reports = user_type_grid(dist, report_grid_size);
  const double theta = inst.theta();
  const std::size_t num_types = types.size();
  const std::size_t num_reports = reports.size();

  const StatBlock total = run_trials(
    trials, threads, StatBlock(num_types * num_reports), [&](std::int64_t trial, StatBlock &acc) {
      TrialStream stream(seed, static_cast<std::uint64_t>(trial));
      TypeProfile profile = draw_profile(inst.distributions(), stream);
      std::vector<Served> at_type(num_types);
      std::vector<Served> at_report(num_reports);
      for (std::size_t a = 0; a < num_types; ++a) {
        profile(user) = types[a];
        at_type[a] = evaluate_user(inst, profile, user, rule);
      }
      for (std::size_t b = 0; b < num_reports; ++b) {
        profile(user) = reports[b];
        at_report[b] = evaluate_user(inst, profile, user, rule);
      }
      for (std::size_t a = 0; a < num_types; ++a) {
        const double truthful = theta * types[a] * at_type[a].fraction - at_type[a].payment;
        for (std::size_t b = 0; b < num_reports; ++b) {
          const double lying = theta * types[a] * at_report[b].fraction - at_report[b].payment;
          acc.stats[a * num_reports + b].add(truthful - lying);
        }
      }
    });

  ICReport out;
  out.user = user;
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < num_types; ++a) {
    for (std::size_t b = 0; b < num_reports; ++b) {
      ICPair pair;
      pair.true_type = types[a];
      pair.report = reports[b];
      pair.margin = total.stats[a * num_reports + b].estimate();
      pair.violation = pair.margin.mean < -sigmas * pair.margin.std_error;
      out.worst_margin = std::min(out.worst_margin, pair.margin.mean);
      out.violations += pair.violation ? 1 : 0;
      out.pairs.push_back(pair);
    }
  }
  return out;
}

bool IRReport::passed() const
{
  if (realization_violations != 0) {
    return false;
  }
  for (const auto &u : users) {
    if (!u.lower_binding) {
      return false;
    }
    for (const auto &p : u.points) {
      if (p.violation) {
        return false;
      }
    }
  }
  return true;
}

IRReport verify_ir(const AuctionInstance &inst, std::int64_t trials, std::uint64_t seed,
                   int grid_size, double sigmas, int threads)
{
  check_trials(trials);
  const Index n = inst.num_users();
  const double theta = inst.theta();
  std::vector<std::vector<double>> grids;
  for (Index j = 0; j < n; ++j) {
    grids.push_back(user_type_grid(inst.distribution(j), grid_size));
  }
  // Per user: grid_size interim utilities, then the lower endpoint.
  const std::size_t stride = static_cast<std::size_t>(grid_size) + 1;

  const StatBlock total = run_trials(
    trials, threads, StatBlock(stride * static_cast<std::size_t>(n)),
    [&](std::int64_t trial, StatBlock &acc) {
      TrialStream stream(seed, static_cast<std::uint64_t>(trial));
      const TypeProfile truth = draw_profile(inst.distributions(), stream);

      const MechanismOutcome outcome = run_mechanism(inst, truth);
      for (Index j = 0; j < n; ++j) {
        const double fraction = allocated_fraction(inst, outcome.allocation, j);
        const double payment = outcome.payments(j);
        if (payment < 0.0 || payment > theta * truth(j) * fraction) {
          ++acc.payment_bound_violations;
        }
        if (fraction == 0.0 && payment != 0.0) {
          ++acc.zero_payment_violations;
        }
      }

      TypeProfile profile = truth;
      for (Index j = 0; j < n; ++j) {
        const auto &grid = grids[static_cast<std::size_t>(j)];
        const std::size_t base = stride * static_cast<std::size_t>(j);
        for (std::size_t k = 0; k < grid.size(); ++k) {
          profile(j) = grid[k];
          const Served s = evaluate_user(inst, profile, j, {});
          acc.stats[base + k].add(theta * grid[k] * s.fraction - s.payment);
        }
        const double lower = inst.distribution(j).lower();
        profile(j) = lower;
        const Served s = evaluate_user(inst, profile, j, {});
        acc.stats[base + grid.size()].add(theta * lower * s.fraction - s.payment);
        profile(j) = truth(j);
      }
    });

  IRReport out;
  out.realizations_checked = trials * n;
  out.realization_violations = total.payment_bound_violations + total.zero_payment_violations;
  for (Index j = 0; j < n; ++j) {
    IRUserReport user;
    user.user = j;
    const auto &grid = grids[static_cast<std::size_t>(j)];
    const std::size_t base = stride * static_cast<std::size_t>(j);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      IRPoint point;
      point.true_type = grid[k];
      point.utility = total.stats[base + k].estimate();
      point.violation = point.utility.mean < -sigmas * point.utility.std_error;
      user.points.push_back(point);
    }
    user.at_lower = total.stats[base + grid.size()].estimate();
    user.lower_binding =
      std::abs(user.at_lower.mean) <= std::max(sigmas * user.at_lower.std_error, 1e-12);
    out.users.push_back(std::move(user));
  }
  return out;
}

std::vector<TypeDistribution> estimated_distributions(const std::vector<TypeDistribution> &truth,
                                                      const MismatchConfig &mismatch)
{
  std::vector<TypeDistribution> out;
  out.reserve(truth.size());
  for (const auto &d : truth) {
    switch (mismatch.mode) {
    case MismatchConfig::Mode::UniformWiden: {
      if (!(mismatch.epsilon >= 0.0)) {
        throw ValidationError("uniform widening needs epsilon >= 0");
      }
      if (d.kind() != TypeDistribution::Kind::Uniform) {
        throw ValidationError("uniform widening applies to uniform distributions only");
      }
      const double pad = 0.5 * mismatch.epsilon * (d.upper() - d.lower());
      out.push_back(TypeDistribution::uniform(d.lower() - pad, d.upper() + pad));
      break;
    }
    case MismatchConfig::Mode::ExponentialRateScale:
      if (!(mismatch.epsilon > -1.0)) {
        throw ValidationError("exponential rate scaling needs epsilon > -1");
      }
      if (d.kind() != TypeDistribution::Kind::Exponential) {
        throw ValidationError("rate scaling applies to exponential distributions only");
      }
      out.push_back(TypeDistribution::exponential((1.0 + mismatch.epsilon) * d.rate()));
      break;
    }
  }
  return out;
}

EstimateWithError simulate_mismatch(const AuctionInstance &true_inst,
                                    const MismatchConfig &mismatch, std::int64_t trials,
                                    std::uint64_t seed, int threads)
{
  const auto estimated = estimated_distributions(true_inst.distributions(), mismatch);
  const AuctionInstance believed = true_inst.with_distributions(estimated);
  return simulate_with_true_types(believed, true_inst.distributions(), trials, seed, threads)
    .er_direct;
}

}  // namespace cache_auction
