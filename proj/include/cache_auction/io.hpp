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

#include <iosfwd>
#include <string>
#include <vector>

#include "cache_auction/mechanism.hpp"
#include "cache_auction/model.hpp"
#include "cache_auction/quality.hpp"
#include "cache_auction/simulation.hpp"
#include "json.hpp"

namespace cache_auction {

using Json = nlohmann::json;

/// Parses the instance schema. Unknown keys anywhere raise ValidationError.
InstanceConfig instance_config_from_json(const Json &doc);
AuctionInstance instance_from_json(const Json &doc);
/// Emits explicit 1-based interest sets, so popularity-sampled instances
/// reload without resampling.
Json instance_to_json(const AuctionInstance &inst);

TypeDistribution distribution_from_json(const Json &doc);
Json distribution_to_json(const TypeDistribution &dist);
CostFunction cost_from_json(const Json &doc);
Json cost_to_json(const CostFunction &cost);

/// A JSON array of n reals.
TypeProfile profile_from_json(const Json &doc);

Json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

Json to_json(const EstimateWithError &e);
Json to_json(const MechanismOutcome &outcome);
Json to_json(const SimulationReport &report);
Json to_json(const ICReport &report);
Json to_json(const IRReport &report);
Json to_json(const RegularityReport &report);

/// printf("%.9g")-style text produced without consulting the C locale.
std::string format_number(double value);

/// Comma-separated table with a fixed header.
class CsvTable
{
public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double> &values);
  void add_row(const std::vector<std::string> &cells);

  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace cache_auction
