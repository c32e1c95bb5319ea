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
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "cache_auction/random.hpp"

namespace cache_auction {

/// A user's valuation law on the support [lower, upper] (upper may be +inf).
///
/// Uniform and exponential laws have closed forms for everything the
/// mechanism needs. Custom laws take a pdf/cdf pair; quantiles and inverse
/// virtual valuations then fall back to bisection.
class TypeDistribution
{
public:
  enum class Kind { Uniform, Exponential, Custom };

  static TypeDistribution uniform(double lower, double upper);
  static TypeDistribution exponential(double rate);
  static TypeDistribution custom(std::function<double(double)> pdf,
                                 std::function<double(double)> cdf, double lower, double upper,
                                 std::string name = "custom");

  Kind kind() const { return kind_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  bool bounded() const { return upper_ < std::numeric_limits<double>::infinity(); }
  /// Only meaningful for the exponential kind.
  double rate() const { return rate_; }
  const std::string &name() const { return name_; }

  bool contains(double t) const { return t >= lower_ && t <= upper_; }

  double pdf(double t) const;
  double cdf(double t) const;
  double quantile(double u) const;
  double mean() const;

  /// Upper end of the support for numerical work: the support's upper bound
  /// when finite, the 1 - 1e-9 quantile otherwise.
  double effective_upper() const;

  /// Custom laws compare equal only to copies of themselves.
  bool operator==(const TypeDistribution &other) const;

private:
  struct CustomLaw
  {
    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
  };

  TypeDistribution() = default;

  Kind kind_ = Kind::Uniform;
  double lower_ = 0.0;
  double upper_ = 1.0;
  double rate_ = 0.0;
  std::string name_;
  std::shared_ptr<const CustomLaw> law_;
};

const char *to_string(TypeDistribution::Kind kind);

/// c(t) = t - (1 - F(t)) / f(t). Throws ValidationError outside the support
/// or where the density vanishes.
double virtual_valuation(const TypeDistribution &dist, double t);

/// inf{ t in support : c(t) >= z }, clamped to the support. Throws
/// ValidationError when z exceeds every value of c on a bounded support.
double inverse_virtual_valuation(const TypeDistribution &dist, double z);

struct RegularityWitness
{
  double t_first;
  double c_first;
  double t_second;
  double c_second;
};

struct RegularityReport
{
  bool regular = true;
  int grid_points = 0;
  /// Largest drop c(t_k) - c(t_{k+1}) seen on the grid (<= 0 when monotone).
  double max_decrease = 0.0;
  std::optional<RegularityWitness> witness;
};

/// Scans c on a grid over the support and reports the first adjacent pair
/// where it drops by more than 1e-9. Bounded supports use an evenly spaced
/// grid, unbounded ones a quantile grid over [1e-6, 1 - 1e-6].
RegularityReport check_regularity(const TypeDistribution &dist, int grid_points = 1001);

/// Inverse-CDF draw.
template <class Stream>
double sample(const TypeDistribution &dist, Stream &stream)
{
  return dist.quantile(stream.uniform());
}

}  // namespace cache_auction
