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

#include "cache_auction/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "cache_auction/errors.hpp"

namespace cache_auction {

namespace {

void require_keys(const Json &doc, const std::string &where,
                  std::initializer_list<const char *> allowed)
{
  if (!doc.is_object()) {
    throw ValidationError(where + " must be a JSON object");
  }
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto &item : doc.items()) {
    if (known.count(item.key()) == 0) {
      throw ValidationError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

const Json &field(const Json &doc, const char *key, const std::string &where)
{
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw ValidationError(where + " is missing '" + key + "'");
  }
  return *it;
}

double number(const Json &doc, const char *key, const std::string &where)
{
  const Json &value = field(doc, key, where);
  if (!value.is_number()) {
    throw ValidationError("'" + std::string(key) + "' in " + where + " must be a number");
  }
  return value.get<double>();
}

std::vector<double> numbers(const Json &value, const std::string &what)
{
  if (!value.is_array()) {
    throw ValidationError(what + " must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto &v : value) {
    if (!v.is_number()) {
      throw ValidationError(what + " must contain numbers only");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

Json finite_or_null(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

}  // namespace

TypeDistribution distribution_from_json(const Json &doc)
{
  const std::string where = "distribution";
  if (!doc.is_object()) {
    throw ValidationError("distribution must be a JSON object");
  }
  const Json &kind = field(doc, "kind", where);
  if (!kind.is_string()) {
    throw ValidationError("distribution kind must be a string");
  }
  const auto name = kind.get<std::string>();
  if (name == "uniform") {
    require_keys(doc, where, {"kind", "lower", "upper"});
    return TypeDistribution::uniform(number(doc, "lower", where), number(doc, "upper", where));
  }
  if (name == "exponential") {
    require_keys(doc, where, {"kind", "rate"});
    return TypeDistribution::exponential(number(doc, "rate", where));
  }
  throw ValidationError("unknown distribution kind '" + name + "'");
}

Json distribution_to_json(const TypeDistribution &dist)
{
  switch (dist.kind()) {
  case TypeDistribution::Kind::Uniform:
    return {{"kind", "uniform"}, {"lower", dist.lower()}, {"upper", dist.upper()}};
  case TypeDistribution::Kind::Exponential:
    return {{"kind", "exponential"}, {"rate", dist.rate()}};
  case TypeDistribution::Kind::Custom:
    break;
  }
  throw ValidationError("custom distributions have no JSON form");
}

CostFunction cost_from_json(const Json &doc)
{
  const std::string where = "cost";
  if (!doc.is_object()) {
    throw ValidationError("cost must be a JSON object");
  }
  const Json &kind = field(doc, "kind", where);
  if (!kind.is_string()) {
    throw ValidationError("cost kind must be a string");
  }
  const auto name = kind.get<std::string>();
  if (name == "quadratic") {
    require_keys(doc, where, {"kind", "alpha"});
    return CostFunction::quadratic(number(doc, "alpha", where));
  }
  if (name == "power") {
    require_keys(doc, where, {"kind", "alpha", "exponent"});
    return CostFunction::power(number(doc, "alpha", where), number(doc, "exponent", where));
  }
  if (name == "custom") {
    require_keys(doc, where, {"kind", "coefficients"});
    return CostFunction::custom(numbers(field(doc, "coefficients", where), "cost coefficients"));
  }
  throw ValidationError("unknown cost kind '" + name + "'");
}

Json cost_to_json(const CostFunction &cost)
{
  switch (cost.kind()) {
  case CostFunction::Kind::Quadratic:
    return {{"kind", "quadratic"}, {"alpha", cost.alpha()}};
  case CostFunction::Kind::Power:
    return {{"kind", "power"}, {"alpha", cost.alpha()}, {"exponent", cost.exponent()}};
  case CostFunction::Kind::Custom:
    return {{"kind", "custom"}, {"coefficients", cost.coefficients()}};
  }
  return {};
}

InstanceConfig instance_config_from_json(const Json &doc)
{
  const std::string where = "instance";
  require_keys(doc, where,
               {"num_contents", "num_users", "interest_sets", "popularity", "content_prices",
                "cost", "theta", "distributions", "strict_regularity"});
  InstanceConfig config;
  const Json &m = field(doc, "num_contents", where);
  const Json &n = field(doc, "num_users", where);
  if (!m.is_number_integer() || !n.is_number_integer()) {
    throw ValidationError("num_contents and num_users must be integers");
  }
  config.num_contents = m.get<Index>();
  config.num_users = n.get<Index>();

  const bool has_sets = doc.contains("interest_sets");
  const bool has_popularity = doc.contains("popularity");
  if (has_sets == has_popularity) {
    throw ValidationError("instance needs exactly one of 'interest_sets' or 'popularity'");
  }
  if (has_sets) {
    const Json &sets = doc.at("interest_sets");
    if (!sets.is_array()) {
      throw ValidationError("interest_sets must be an array of arrays");
    }
    std::vector<std::vector<int>> out;
    for (const auto &set : sets) {
      if (!set.is_array()) {
        throw ValidationError("interest_sets must be an array of arrays");
      }
      auto &users = out.emplace_back();
      for (const auto &u : set) {
        if (!u.is_number_integer()) {
          throw ValidationError("interest sets hold integer user ids");
        }
        users.push_back(u.get<int>());
      }
    }
    config.interests = std::move(out);
  } else {
    const Json &pop = doc.at("popularity");
    require_keys(pop, "popularity", {"q", "seed"});
    PopularityModel model;
    model.inclusion_probs = numbers(field(pop, "q", "popularity"), "popularity q");
    const Json &seed = field(pop, "seed", "popularity");
    if (!seed.is_number_integer()) {
      throw ValidationError("popularity seed must be an integer");
    }
    model.seed = seed.get<std::uint64_t>();
    config.interests = std::move(model);
  }

  config.content_prices = numbers(field(doc, "content_prices", where), "content_prices");
  config.cost = cost_from_json(field(doc, "cost", where));
  config.theta = number(doc, "theta", where);
  const Json &dists = field(doc, "distributions", where);
  if (!dists.is_array()) {
    throw ValidationError("distributions must be an array");
  }
  for (const auto &d : dists) {
    config.distributions.push_back(distribution_from_json(d));
  }
  if (doc.contains("strict_regularity")) {
    if (!doc.at("strict_regularity").is_boolean()) {
      throw ValidationError("strict_regularity must be a boolean");
    }
    config.strict_regularity = doc.at("strict_regularity").get<bool>();
  }
  return config;
}

AuctionInstance instance_from_json(const Json &doc)
{
  return build_instance(instance_config_from_json(doc));
}

Json instance_to_json(const AuctionInstance &inst)
{
  Json sets = Json::array();
  for (const auto &set : inst.interests().sets()) {
    Json users = Json::array();
    for (Index j : set) {
      users.push_back(j + 1);
    }
    sets.push_back(std::move(users));
  }
  Json dists = Json::array();
  for (const auto &d : inst.distributions()) {
    dists.push_back(distribution_to_json(d));
  }
  const auto &r = inst.content_prices();
  return {{"num_contents", inst.num_contents()},
          {"num_users", inst.num_users()},
          {"interest_sets", std::move(sets)},
          {"content_prices", std::vector<double>(r.data(), r.data() + r.size())},
          {"cost", cost_to_json(inst.cost())},
          {"theta", inst.theta()},
          {"distributions", std::move(dists)}};
}

TypeProfile profile_from_json(const Json &doc)
{
  const auto values = numbers(doc, "profile");
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Index>(values.size()));
}

Json read_json_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open '" + path + "'");
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error &e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string &path, const std::string &text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write '" + path + "'");
  }
  out << text;
}

Json to_json(const EstimateWithError &e)
{
  return {{"mean", e.mean}, {"std_error", e.std_error}, {"trials", e.trials}};
}

Json to_json(const MechanismOutcome &outcome)
{
  const auto &p = outcome.allocation.fractions;
  Json certs = Json::array();
  for (const auto &c : outcome.certificates) {
    certs.push_back({{"user", c.user + 1},
                     {"beta", c.beta},
                     {"phi_at_lower", finite_or_null(c.phi_at_lower)},
                     {"phi_at_t", finite_or_null(c.phi_at_t)},
                     {"xi", c.xi ? Json(*c.xi) : Json(nullptr)},
                     {"branch", to_string(c.branch)},
                     {"integral_value", c.integral_value},
                     {"payment", c.payment}});
  }
  const auto &x = outcome.payments;
  return {{"allocation",
           {{"fractions", std::vector<double>(p.data(), p.data() + p.size())},
            {"winner", outcome.allocation.winner ? Json(*outcome.allocation.winner + 1)
                                                 : Json(nullptr)}}},
          {"payments", std::vector<double>(x.data(), x.data() + x.size())},
          {"certificates", std::move(certs)},
          {"virtual_surplus", outcome.virtual_surplus},
          {"realized_sp_profit", outcome.realized_sp_profit}};
}

Json to_json(const SimulationReport &report)
{
  Json allocation = Json::array();
  for (const auto &e : report.expected_allocation) {
    allocation.push_back(to_json(e));
  }
  Json users = Json::array();
  for (std::size_t j = 0; j < report.per_user.size(); ++j) {
    const auto &u = report.per_user[j];
    users.push_back({{"user", j + 1},
                     {"expected_payment", to_json(u.expected_payment)},
                     {"expected_utility", to_json(u.expected_utility)},
                     {"expected_fraction", to_json(u.expected_fraction)}});
  }
  return {{"trials", report.trials},
          {"er_direct", to_json(report.er_direct)},
          {"er_virtual", to_json(report.er_virtual)},
          {"er_difference", to_json(report.er_difference)},
          {"expected_allocation", std::move(allocation)},
          {"idle_fraction", to_json(report.idle_fraction)},
          {"avg_user_utility", to_json(report.avg_user_utility)},
          {"per_user", std::move(users)},
          {"zero_payment_violations", report.zero_payment_violations},
          {"payment_bound_violations", report.payment_bound_violations}};
}

Json to_json(const ICReport &report)
{
  Json pairs = Json::array();
  for (const auto &p : report.pairs) {
    pairs.push_back({{"true_type", p.true_type},
                     {"report", p.report},
                     {"margin", to_json(p.margin)},
                     {"violation", p.violation}});
  }
  return {{"user", report.user + 1},
          {"worst_margin", report.worst_margin},
          {"violations", report.violations},
          {"pairs", std::move(pairs)}};
}

Json to_json(const IRReport &report)
{
  Json users = Json::array();
  for (const auto &u : report.users) {
    Json points = Json::array();
    for (const auto &p : u.points) {
      points.push_back(
        {{"true_type", p.true_type}, {"utility", to_json(p.utility)}, {"violation", p.violation}});
    }
    users.push_back({{"user", u.user + 1},
                     {"points", std::move(points)},
                     {"at_lower", to_json(u.at_lower)},
                     {"lower_binding", u.lower_binding}});
  }
  return {{"users", std::move(users)},
          {"realization_violations", report.realization_violations},
          {"realizations_checked", report.realizations_checked},
          {"passed", report.passed()}};
}

Json to_json(const RegularityReport &report)
{
  Json out = {{"regular", report.regular},
              {"grid_points", report.grid_points},
              {"max_decrease", finite_or_null(report.max_decrease)}};
  if (report.witness) {
    out["witness"] = {{"t_first", report.witness->t_first},
                      {"c_first", report.witness->c_first},
                      {"t_second", report.witness->t_second},
                      {"c_second", report.witness->c_second}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

std::string format_number(double value)
{
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buffer[64];
  const auto result =
    std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 9);
  return std::string(buffer, result.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header)
  : header_(std::move(header))
{}

void CsvTable::add_row(const std::vector<double> &values)
{
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) {
    cells.push_back(format_number(v));
  }
  add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string> &cells)
{
  if (cells.size() != header_.size()) {
    throw ValidationError("CSV row width does not match the header");
  }
  rows_.push_back(cells);
}

std::string CsvTable::str() const
{
  std::ostringstream out;
  auto emit = [&out](const std::vector<std::string> &cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      out << (k ? "," : "") << cells[k];
    }
    out << '\n';
  };
  emit(header_);
  for (const auto &row : rows_) {
    emit(row);
  }
  return out.str();
}

}  // namespace cache_auction
