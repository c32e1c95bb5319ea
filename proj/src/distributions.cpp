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

#include "cache_auction/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cache_auction/errors.hpp"

namespace cache_auction {

namespace {

constexpr double kBisectionTolerance = 1e-10;
constexpr double kRegularityTolerance = 1e-9;
constexpr double kTailQuantile = 1.0 - 1e-9;

std::string describe(double value)
{
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

// Smallest x in [lo, hi] with pred(x) true, assuming pred is monotone
// false -> true and pred(hi) holds.
template <class Pred>
double bisect_first_true(double lo, double hi, Pred pred)
{
  while (hi - lo > kBisectionTolerance * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

TypeDistribution TypeDistribution::uniform(double lower, double upper)
{
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
    throw ValidationError("uniform distribution requires finite lower < upper, got [" +
                          describe(lower) + ", " + describe(upper) + "]");
  }
  TypeDistribution d;
  d.kind_ = Kind::Uniform;
  d.lower_ = lower;
  d.upper_ = upper;
  d.name_ = "uniform";
  return d;
}

TypeDistribution TypeDistribution::exponential(double rate)
{
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ValidationError("exponential distribution requires rate > 0, got " + describe(rate));
  }
  TypeDistribution d;
  d.kind_ = Kind::Exponential;
  d.lower_ = 0.0;
  d.upper_ = std::numeric_limits<double>::infinity();
  d.rate_ = rate;
  d.name_ = "exponential";
  return d;
}

TypeDistribution TypeDistribution::custom(std::function<double(double)> pdf,
                                          std::function<double(double)> cdf, double lower,
                                          double upper, std::string name)
{
  if (!pdf || !cdf) {
    throw ValidationError("custom distribution needs both pdf and cdf");
  }
  if (!std::isfinite(lower) || !(lower < upper)) {
    throw ValidationError("custom distribution requires finite lower < upper");
  }
  TypeDistribution d;
  d.kind_ = Kind::Custom;
  d.lower_ = lower;
  d.upper_ = upper;
  d.name_ = std::move(name);
  d.law_ = std::make_shared<const CustomLaw>(CustomLaw{std::move(pdf), std::move(cdf)});
  return d;
}

double TypeDistribution::pdf(double t) const
{
  if (t < lower_ || t > upper_) {
    return 0.0;
  }
  switch (kind_) {
  case Kind::Uniform:
    return 1.0 / (upper_ - lower_);
  case Kind::Exponential:
    return rate_ * std::exp(-rate_ * t);
  case Kind::Custom:
    return law_->pdf(t);
  }
  return 0.0;
}

double TypeDistribution::cdf(double t) const
{
  if (t <= lower_) {
    return 0.0;
  }
  if (t >= upper_) {
    return 1.0;
  }
  switch (kind_) {
  case Kind::Uniform:
    return (t - lower_) / (upper_ - lower_);
  case Kind::Exponential:
    return -std::expm1(-rate_ * t);
  case Kind::Custom:
    return std::clamp(law_->cdf(t), 0.0, 1.0);
  }
  return 0.0;
}

double TypeDistribution::quantile(double u) const
{
  if (!(u >= 0.0 && u <= 1.0)) {
    throw ValidationError("quantile level must lie in [0, 1], got " + describe(u));
  }
  switch (kind_) {
  case Kind::Uniform:
    return lower_ + (upper_ - lower_) * u;
  case Kind::Exponential:
    return u >= 1.0 ? upper_ : -std::log1p(-u) / rate_;
  case Kind::Custom:
    break;
  }
  if (u <= 0.0) {
    return lower_;
  }
  if (u >= 1.0) {
    return upper_;
  }
  double hi = bounded() ? upper_ : lower_ + 1.0;
  while (!bounded() && cdf(hi) < u) {
    hi = lower_ + 2.0 * (hi - lower_);
  }
  return bisect_first_true(lower_, hi, [&](double t) { return cdf(t) >= u; });
}

double TypeDistribution::mean() const
{
  switch (kind_) {
  case Kind::Uniform:
    return 0.5 * (lower_ + upper_);
  case Kind::Exponential:
    return 1.0 / rate_;
  case Kind::Custom:
    break;
  }
  // E[t] = lower + int (1 - F) over the (truncated) support, Simpson's rule.
  const double hi = effective_upper();
  constexpr int kIntervals = 20000;
  const double step = (hi - lower_) / kIntervals;
  double acc = 0.0;
  for (int k = 0; k <= kIntervals; ++k) {
    const double weight = (k == 0 || k == kIntervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    acc += weight * (1.0 - cdf(lower_ + k * step));
  }
  return lower_ + acc * step / 3.0;
}

double TypeDistribution::effective_upper() const
{
  return bounded() ? upper_ : quantile(kTailQuantile);
}

bool TypeDistribution::operator==(const TypeDistribution &other) const
{
  if (kind_ != other.kind_) {
    return false;
  }
  switch (kind_) {
  case Kind::Uniform:
    return lower_ == other.lower_ && upper_ == other.upper_;
  case Kind::Exponential:
    return rate_ == other.rate_;
  case Kind::Custom:
    return law_ == other.law_ && lower_ == other.lower_ && upper_ == other.upper_;
  }
  return false;
}

const char *to_string(TypeDistribution::Kind kind)
{
  switch (kind) {
  case TypeDistribution::Kind::Uniform:
    return "uniform";
  case TypeDistribution::Kind::Exponential:
    return "exponential";
  case TypeDistribution::Kind::Custom:
    return "custom";
  }
  return "unknown";
}

double virtual_valuation(const TypeDistribution &dist, double t)
{
  if (!dist.contains(t)) {
    throw ValidationError("type " + describe(t) + " lies outside the support [" +
                          describe(dist.lower()) + ", " + describe(dist.upper()) + "]");
  }
  switch (dist.kind()) {
  case TypeDistribution::Kind::Uniform:
    return 2.0 * t - dist.upper();
  case TypeDistribution::Kind::Exponential:
    return t - 1.0 / dist.rate();
  case TypeDistribution::Kind::Custom:
    break;
  }
  const double f = dist.pdf(t);
  if (!(f > 0.0)) {
    throw ValidationError("density vanishes at t = " + describe(t));
  }
  return t - (1.0 - dist.cdf(t)) / f;
}

double inverse_virtual_valuation(const TypeDistribution &dist, double z)
{
  switch (dist.kind()) {
  case TypeDistribution::Kind::Uniform: {
    if (z > dist.upper()) {
      throw ValidationError("virtual valuation " + describe(z) +
                            " exceeds its maximum on the support (" + describe(dist.upper()) +
                            ")");
    }
    return std::max(0.5 * (z + dist.upper()), dist.lower());
  }
  case TypeDistribution::Kind::Exponential:
    return std::max(z + 1.0 / dist.rate(), 0.0);
  case TypeDistribution::Kind::Custom:
    break;
  }

  // Endpoints where the density vanishes are nudged inward.
  const double width = dist.effective_upper() - dist.lower();
  auto c_at = [&](double t) {
    if (!(dist.pdf(t) > 0.0)) {
      const double inward = t <= dist.lower() ? t + 1e-12 * width : t - 1e-12 * width;
      return virtual_valuation(dist, inward);
    }
    return virtual_valuation(dist, t);
  };

  if (c_at(dist.lower()) >= z) {
    return dist.lower();
  }
  double hi;
  if (dist.bounded()) {
    hi = dist.upper();
    if (c_at(hi) < z) {
      throw ValidationError("virtual valuation " + describe(z) +
                            " exceeds its maximum on the support");
    }
  } else {
    hi = dist.lower() + std::max(1.0, width);
    while (c_at(hi) < z) {
      hi = dist.lower() + 2.0 * (hi - dist.lower());
    }
  }
  return bisect_first_true(dist.lower(), hi, [&](double t) { return c_at(t) >= z; });
}

RegularityReport check_regularity(const TypeDistribution &dist, int grid_points)
{
  if (grid_points < 2) {
    throw ValidationError("regularity check needs at least 2 grid points");
  }
  RegularityReport report;
  report.grid_points = grid_points;
  report.max_decrease = -std::numeric_limits<double>::infinity();

  auto grid_point = [&](int k) {
    const double s = static_cast<double>(k) / (grid_points - 1);
    if (!dist.bounded()) {
      return dist.quantile(1e-6 + s * (1.0 - 2e-6));
    }
    double t = dist.lower() + s * (dist.upper() - dist.lower());
    if (!(dist.pdf(t) > 0.0)) {
      const double nudge = 1e-9 * (dist.upper() - dist.lower());
      t = k == 0 ? t + nudge : t - nudge;
    }
    return t;
  };

  double t_prev = grid_point(0);
  double c_prev = virtual_valuation(dist, t_prev);
  for (int k = 1; k < grid_points; ++k) {
    const double t = grid_point(k);
    const double c = virtual_valuation(dist, t);
    const double drop = c_prev - c;
    report.max_decrease = std::max(report.max_decrease, drop);
    if (drop > kRegularityTolerance && !report.witness) {
      report.regular = false;
      report.witness = RegularityWitness{t_prev, c_prev, t, c};
    }
    t_prev = t;
    c_prev = c;
  }
  return report;
}

}  // namespace cache_auction
