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

#include <vector>

namespace cache_auction {

/// Per-user unit delivery cost h(theta) of serving content at quality theta.
///
/// Three shapes are supported:
///   quadratic  h = alpha * theta^2
///   power      h = alpha * theta^d, d > 1
///   custom     h = sum_k a_k theta^k with a_0 = a_1 = 0 and a_k >= 0
///
/// Every shape satisfies h(0) = 0, h'(0) = 0, convexity on [0, inf) and an
/// unbounded strictly increasing derivative; the constructors reject
/// parameters that break this.
class CostFunction
{
public:
  enum class Kind { Quadratic, Power, Custom };

  static CostFunction quadratic(double alpha);
  static CostFunction power(double alpha, double exponent);
  static CostFunction custom(std::vector<double> coefficients);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double exponent() const { return exponent_; }
  const std::vector<double> &coefficients() const { return coefficients_; }

  double operator()(double theta) const { return value(theta); }
  double value(double theta) const;
  double derivative(double theta) const;

  /// (h')^{-1}(y) for y >= 0. Closed form for quadratic and power kinds,
  /// bracketed bisection to adjacent doubles for custom polynomials.
  double inverse_derivative(double y) const;

  /// Same cost shape with alpha replaced (custom: coefficients scaled so that
  /// the leading nonzero one equals alpha).
  CostFunction with_alpha(double alpha) const;

  bool operator==(const CostFunction &) const = default;

private:
  CostFunction() = default;

  Kind kind_ = Kind::Quadratic;
  double alpha_ = 0.0;
  double exponent_ = 2.0;
  std::vector<double> coefficients_;
};

const char *to_string(CostFunction::Kind kind);

}  // namespace cache_auction
