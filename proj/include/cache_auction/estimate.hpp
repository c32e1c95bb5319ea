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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

namespace cache_auction {

/// A Monte-Carlo mean with its standard error (sample sd / sqrt(trials)).
struct EstimateWithError
{
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
};

/// sqrt(a.se^2 + b.se^2).
inline double combined_std_error(const EstimateWithError &a, const EstimateWithError &b)
{
  return std::hypot(a.std_error, b.std_error);
}

/// Welford accumulator with Chan's pairwise merge.
class RunningStat
{
public:
  void add(double x)
  {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  void merge(const RunningStat &other)
  {
    if (other.count_ == 0) {
      return;
    }
    if (count_ == 0) {
      *this = other;
      return;
    }
    const auto total = count_ + other.count_;
    const double delta = other.mean_ - mean_;
    mean_ += delta * static_cast<double>(other.count_) / static_cast<double>(total);
    m2_ += other.m2_ + delta * delta * static_cast<double>(count_) *
                         static_cast<double>(other.count_) / static_cast<double>(total);
    count_ = total;
  }

  std::int64_t count() const { return count_; }
  double mean() const { return mean_; }

  EstimateWithError estimate() const
  {
    EstimateWithError e;
    e.mean = mean_;
    e.trials = count_;
    if (count_ > 1) {
      const double variance = std::max(0.0, m2_ / static_cast<double>(count_ - 1));
      e.std_error = std::sqrt(variance / static_cast<double>(count_));
    }
    return e;
  }

private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Worker count: CACHE_AUCTION_THREADS wins over the request; 0 means one
/// per hardware thread.
int resolve_threads(int requested);

/// Runs body(trial, accum) for trial in [0, trials). Trials are cut into
/// fixed blocks of 256, each block fills a fresh copy of `init`, and blocks
/// are merged in order, so the result does not depend on the worker count.
template <class Accum, class Body>
Accum run_trials(std::int64_t trials, int threads, const Accum &init, Body body)
{
  constexpr std::int64_t kBlock = 256;
  const std::int64_t blocks = (trials + kBlock - 1) / kBlock;
  std::vector<Accum> partial(static_cast<std::size_t>(blocks), init);

  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t b = next++; b < blocks; b = next++) {
      Accum &acc = partial[static_cast<std::size_t>(b)];
      const std::int64_t end = std::min(trials, (b + 1) * kBlock);
      for (std::int64_t trial = b * kBlock; trial < end; ++trial) {
        body(trial, acc);
      }
    }
  };

  const int workers =
    static_cast<int>(std::min<std::int64_t>(std::max(1, resolve_threads(threads)), blocks));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(worker);
    }
  }

  Accum total = init;
  for (const auto &acc : partial) {
    total.merge(acc);
  }
  return total;
}

}  // namespace cache_auction
