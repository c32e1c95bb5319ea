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

#include "cache_auction/estimate.hpp"

#include <cstdlib>
#include <string>

namespace cache_auction {

int resolve_threads(int requested)
{
  if (const char *env = std::getenv("CACHE_AUCTION_THREADS")) {
    try {
      const int value = std::stoi(env);
      if (value > 0) {
        return value;
      }
    } catch (const std::exception &) {
      // Unparseable override: keep the request.
    }
  }
  if (requested <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  return requested;
}

}  // namespace cache_auction
