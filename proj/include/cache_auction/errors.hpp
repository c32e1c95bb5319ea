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

#include <stdexcept>
#include <string>

namespace cache_auction {

/// Raised for malformed configurations, inconsistent dimensions and
/// out-of-domain arguments.
class ValidationError : public std::runtime_error
{
public:
  explicit ValidationError(const std::string &what)
    : std::runtime_error(what)
  {}
};

/// Raised when a computed quantity violates a relation that holds
/// mathematically (e.g. a payment threshold outside its bracket).
class ConsistencyError : public std::logic_error
{
public:
  explicit ConsistencyError(const std::string &what)
    : std::logic_error(what)
  {}
};

}  // namespace cache_auction
