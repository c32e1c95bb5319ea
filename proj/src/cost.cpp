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

#include "cache_auction/cost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cache_auction/errors.hpp"

namespace cache_auction {

CostFunction CostFunction::quadratic(double alpha)
{
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("quadratic cost requires alpha > 0, got " + std::to_string(alpha));
  }
  CostFunction h;
  h.kind_ = Kind::Quadratic;
  h.alpha_ = alpha;
  h.exponent_ = 2.0;
  return h;
}

CostFunction CostFunction::power(double alpha, double exponent)
{
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("power cost requires alpha > 0, got " + std::to_string(alpha));
  }
  if (!(exponent > 1.0) || !std::isfinite(exponent)) {
    throw ValidationError("power cost requires exponent > 1, got " + std::to_string(exponent));
  }
  CostFunction h;
  h.kind_ = Kind::Power;
  h.alpha_ = alpha;
  h.exponent_ = exponent;
  return h;
}

CostFunction CostFunction::custom(std::vector<double> coefficients)
{
  if (coefficients.size() < 3) {
    throw ValidationError("custom cost needs coefficients up to at least theta^2");
  }
  if (coefficients[0] != 0.0 || coefficients[1] != 0.0) {
    throw ValidationError("custom cost must have h(0) = 0 and h'(0) = 0 (a_0 = a_1 = 0)");
  }
  bool any_positive = false;
  for (double a : coefficients) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw ValidationError("custom cost coefficients must be finite and nonnegative");
    }
    any_positive = any_positive || a > 0.0;
  }
  if (!any_positive) {
    throw ValidationError("custom cost needs a positive coefficient of degree >= 2");
  }
  CostFunction h;
  h.kind_ = Kind::Custom;
  h.coefficients_ = std::move(coefficients);
  for (double a : h.coefficients_) {
    if (a > 0.0) {
      h.alpha_ = a;
      break;
    }
  }
  return h;
}

double CostFunction::value(double theta) const
{
  switch (kind_) {
  case Kind::Quadratic:
    return alpha_ * theta * theta;
  case Kind::Power:
    return alpha_ * std::pow(theta, exponent_);
  case Kind::Custom: {
    double acc = 0.0;
    for (auto k = coefficients_.size(); k-- > 0;) {
      acc = acc * theta + coefficients_[k];
    }
    return acc;
  }
  }
  return 0.0;
}

double CostFunction::derivative(double theta) const
{
  switch (kind_) {
  case Kind::Quadratic:
    return 2.0 * alpha_ * theta;
  case Kind::Power:
    return alpha_ * exponent_ * std::pow(theta, exponent_ - 1.0);
  case Kind::Custom: {
    double acc = 0.0;
    for (auto k = coefficients_.size(); k-- > 1;) {
      acc = acc * theta + static_cast<double>(k) * coefficients_[k];
    }
    return acc;
  }
  }
  return 0.0;
}

double CostFunction::inverse_derivative(double y) const
{
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw ValidationError("inverse derivative is defined for finite y >= 0");
  }
  switch (kind_) {
  case Kind::Quadratic:
    return y / (2.0 * alpha_);
  case Kind::Power:
    return std::pow(y / (alpha_ * exponent_), 1.0 / (exponent_ - 1.0));
  case Kind::Custom:
    break;
  }
  if (y == 0.0) {
    return 0.0;
  }
  double lo = 0.0;
  double hi = 1.0;
  while (derivative(hi) < y) {
    lo = hi;
    hi *= 2.0;
  }
  // Bisect down to adjacent doubles, then keep the closer endpoint.
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    if (derivative(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(derivative(lo) - y) < std::abs(derivative(hi) - y) ? lo : hi;
}

CostFunction CostFunction::with_alpha(double alpha) const
{
  switch (kind_) {
  case Kind::Quadratic:
    return quadratic(alpha);
  case Kind::Power:
    return power(alpha, exponent_);
  case Kind::Custom: {
    if (!(alpha > 0.0)) {
      throw ValidationError("alpha must be positive");
    }
    auto scaled = coefficients_;
    for (double &a : scaled) {
      a *= alpha / alpha_;
    }
    return custom(std::move(scaled));
  }
  }
  return *this;
}

const char *to_string(CostFunction::Kind kind)
{
  switch (kind) {
  case CostFunction::Kind::Quadratic:
    return "quadratic";
  case CostFunction::Kind::Power:
    return "power";
  case CostFunction::Kind::Custom:
    return "custom";
  }
  return "unknown";
}

}  // namespace cache_auction
