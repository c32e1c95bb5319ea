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
#include <random>

namespace cache_auction {

/// Maps a 64-bit word to the open interval (0, 1) using its top 52 bits.
/// Endpoints are excluded so inverse-CDF sampling never hits F^{-1}(0) or
/// F^{-1}(1).
inline double to_open_unit(std::uint64_t word)
{
  return (static_cast<double>(word >> 12) + 0.5) * 0x1.0p-52;
}

/// Independent random stream for one Monte-Carlo trial, derived from
/// (seed, trial). Streams do not depend on which worker runs the trial.
class TrialStream
{
public:
  TrialStream(std::uint64_t seed, std::uint64_t trial)
  {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    engine_.seed(seq);
  }

  double uniform() { return to_open_unit(engine_()); }

  std::mt19937_64 &engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

}  // namespace cache_auction
