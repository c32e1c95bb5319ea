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
#include <optional>
#include <vector>

#include "cache_auction/model.hpp"

namespace cache_auction {

/// Cache space split over contents. The optimal rule is winner-take-all, so
/// fractions is either all zeros or the unit vector of the winner.
struct Allocation
{
  Eigen::VectorXd fractions;
  std::optional<Index> winner;
};

enum class PaymentBranch { Full, Zero, Threshold };

const char *to_string(PaymentBranch branch);

/// Everything needed to audit one user's payment.
///
/// The allocation sum over S_j is a 0/1 step in the user's own report, so
/// the payment integral collapses to t_j - (jump point). beta is the best
/// competing score from contents outside S_j (or 0 for caching nothing),
/// phi(tau) is the best score inside S_j when the user reports tau.
struct PaymentCertificate
{
  Index user = 0;
  double beta = 0.0;
  /// -inf when the user is interested in no content.
  double phi_at_lower = 0.0;
  double phi_at_t = 0.0;
  /// Jump point, only in the threshold branch.
  std::optional<double> xi;
  PaymentBranch branch = PaymentBranch::Zero;
  /// Integral of the user's allocation step over [lower, t_j].
  double integral_value = 0.0;
  double payment = 0.0;
};

struct MechanismOutcome
{
  Allocation allocation;
  Eigen::VectorXd payments;
  std::vector<PaymentCertificate> certificates;
  /// max(0, max_i score_i): the virtual welfare the allocation achieves.
  double virtual_surplus = 0.0;
  /// sum_j x_j - sum_i p_i (r_i + |Omega_i| h(theta)).
  double realized_sp_profit = 0.0;
};

/// c_j(t_j) for every user.
Eigen::VectorXd virtual_valuations(const AuctionInstance &inst, const TypeProfile &t);

/// Virtual welfare of caching each content:
/// theta * (membership * c) - h(theta) * |Omega| - r.
Eigen::VectorXd content_scores(const AuctionInstance &inst, const TypeProfile &t);
double content_score(const AuctionInstance &inst, const TypeProfile &t, Index content);

/// Argmax content when its score is strictly positive, nothing otherwise.
/// Ties go to the lowest content index.
Allocation allocate_from_scores(const Eigen::VectorXd &scores);
Allocation allocate(const AuctionInstance &inst, const TypeProfile &t);

/// sum over i in S_j of p_i.
double allocated_fraction(const AuctionInstance &inst, const Allocation &allocation, Index user);

/// Closed-form payment of `user` at profile t, with its certificate.
PaymentCertificate payment_closed_form(const AuctionInstance &inst, const TypeProfile &t,
                                       Index user);

/// Same as above with scores and allocation precomputed for t.
PaymentCertificate payment_closed_form(const AuctionInstance &inst, const TypeProfile &t,
                                       const Eigen::VectorXd &scores,
                                       const Allocation &allocation, Index user);

/// Brute-force payment: sweeps the user's report over [lower, t_j] on a
/// uniform grid, reruns the allocation at every point and integrates the
/// resulting step. With refine_jump the single 0 -> 1 jump is located by
/// bisection to 1e-9; otherwise the grid trapezoid is used as is.
double payment_oracle(const AuctionInstance &inst, const TypeProfile &t, Index user,
                      int grid_points = 200, bool refine_jump = true);

MechanismOutcome run_mechanism(const AuctionInstance &inst, const TypeProfile &reports);

/// Realized utility of `user` with true type t_true under an outcome
/// computed from (possibly different) reports.
double ex_post_utility(const AuctionInstance &inst, const MechanismOutcome &outcome,
                       const TypeProfile &t_true, Index user);

}  // namespace cache_auction
