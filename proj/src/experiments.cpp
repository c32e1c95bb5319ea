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

#include "cache_auction/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "cache_auction/errors.hpp"
#include "cache_auction/quality.hpp"
#include "cache_auction/random.hpp"

namespace cache_auction {

namespace {

const std::vector<std::vector<Index>> kReferenceAudiences = {
  {0, 2, 3, 4, 5, 9}, {0, 2, 4, 6, 7, 8}, {0, 1, 2, 4, 8, 9}};

Eigen::VectorXd to_vector(const std::vector<double> &values)
{
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Index>(values.size()));
}

AuctionInstance reference_market(std::vector<TypeDistribution> dists)
{
  return {InterestStructure::from_sets(3, 10, kReferenceAudiences), to_vector(kReferencePrices),
          CostFunction::quadratic(0.1), 1.0, std::move(dists)};
}

// First k entries of a seeded Fisher-Yates shuffle of {0..n-1}.
std::vector<Index> random_subset(Index n, Index k, std::uint64_t seed, std::uint64_t stream_id)
{
  std::vector<Index> users(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    users[static_cast<std::size_t>(j)] = j;
  }
  TrialStream stream(seed, stream_id);
  for (Index j = n - 1; j > 0; --j) {
    const auto pick = static_cast<Index>(stream.uniform() * static_cast<double>(j + 1));
    std::swap(users[static_cast<std::size_t>(j)],
              users[static_cast<std::size_t>(std::min(pick, j))]);
  }
  users.resize(static_cast<std::size_t>(k));
  return users;
}

Index as_count(double value, const char *what)
{
  const double rounded = std::round(value);
  if (std::abs(value - rounded) > 1e-9 || rounded < 1) {
    throw ValidationError(std::string(what) + " must be a positive integer");
  }
  return static_cast<Index>(rounded);
}

std::string join_path(const std::string &dir, const std::string &file)
{
  return (std::filesystem::path(dir) / file).string();
}

}  // namespace

AuctionInstance section4_uniform()
{
  std::vector<TypeDistribution> dists;
  for (int j = 0; j < 10; ++j) {
    // (10 + j) / 10 is the correctly rounded decimal, unlike 1 + 0.1 j.
    dists.push_back(TypeDistribution::uniform((10 + j) / 10.0, (40 + j) / 10.0));
  }
  return reference_market(std::move(dists));
}

AuctionInstance section4_exponential()
{
  std::vector<TypeDistribution> dists;
  for (int j = 0; j < 10; ++j) {
    dists.push_back(TypeDistribution::exponential(1.0 / ((100 + 4 * j) / 10.0)));
  }
  return reference_market(std::move(dists));
}

AuctionInstance homogeneous(const HomogeneousParams &params)
{
  if (params.num_users < 1) {
    throw ValidationError("homogeneous family needs num_users >= 1");
  }
  if (params.content_prices.size() != params.inclusion_probs.size()) {
    throw ValidationError("homogeneous family needs one price per inclusion probability");
  }
  PopularityModel model{params.inclusion_probs, params.seed};
  return {sample_interest_structure(model, params.num_users), to_vector(params.content_prices),
          params.cost, params.theta,
          std::vector<TypeDistribution>(static_cast<std::size_t>(params.num_users),
                                        params.distribution)};
}

AuctionInstance generate_instance(const Json &params)
{
  if (!params.is_object() || !params.contains("family") || !params.at("family").is_string()) {
    throw ValidationError("generator needs a string 'family'");
  }
  const auto family = params.at("family").get<std::string>();
  if (family == "section4_uniform" || family == "section4_exponential") {
    if (params.size() != 1) {
      throw ValidationError("generator family '" + family + "' takes no parameters");
    }
    return family == "section4_uniform" ? section4_uniform() : section4_exponential();
  }
  if (family != "homogeneous") {
    throw ValidationError("unknown generator family '" + family + "'");
  }
  static const std::vector<std::string> kKeys = {
    "family", "num_users", "q", "seed", "distribution", "cost", "theta", "content_prices"};
  for (const auto &item : params.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), item.key()) == kKeys.end()) {
      throw ValidationError("unknown key '" + item.key() + "' in generator");
    }
  }
  HomogeneousParams p;
  try {
    if (params.contains("num_users")) p.num_users = params.at("num_users").get<Index>();
    if (params.contains("q")) p.inclusion_probs = params.at("q").get<std::vector<double>>();
    if (params.contains("seed")) p.seed = params.at("seed").get<std::uint64_t>();
    if (params.contains("theta")) p.theta = params.at("theta").get<double>();
    if (params.contains("content_prices")) {
      p.content_prices = params.at("content_prices").get<std::vector<double>>();
    }
  } catch (const Json::exception &e) {
    throw ValidationError(std::string("malformed generator parameters: ") + e.what());
  }
  if (params.contains("distribution")) p.distribution = distribution_from_json(params.at("distribution"));
  if (params.contains("cost")) p.cost = cost_from_json(params.at("cost"));
  return homogeneous(p);
}

std::vector<double> parse_range(const std::string &text)
{
  std::vector<double> parts;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(token, &used));
      if (used != token.size()) {
        throw std::invalid_argument(token);
      }
    } catch (const std::exception &) {
      throw ValidationError("range '" + text + "' must look like a:b:step");
    }
  }
  if (parts.size() != 3) {
    throw ValidationError("range '" + text + "' must look like a:b:step");
  }
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(step > 0.0)) {
    throw ValidationError("range step must be positive");
  }
  if (stop < start) {
    throw ValidationError("range end lies below its start");
  }
  std::vector<double> values;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long k = 0; k <= count; ++k) {
    values.push_back(start + static_cast<double>(k) * step);
  }
  return values;
}

SweepParam parse_sweep_param(const std::string &name)
{
  for (auto p : {SweepParam::ExpectedType, SweepParam::SupportWidth, SweepParam::Lambda,
                 SweepParam::PopularityK, SweepParam::NumUsers, SweepParam::Alpha,
                 SweepParam::Epsilon}) {
    if (name == to_string(p)) {
      return p;
    }
  }
  throw ValidationError("unknown sweep parameter '" + name + "'");
}

const char *to_string(SweepParam param)
{
  switch (param) {
  case SweepParam::ExpectedType:
    return "expected_type";
  case SweepParam::SupportWidth:
    return "support_width";
  case SweepParam::Lambda:
    return "lambda";
  case SweepParam::PopularityK:
    return "popularity_k";
  case SweepParam::NumUsers:
    return "num_users";
  case SweepParam::Alpha:
    return "alpha";
  case SweepParam::Epsilon:
    return "epsilon";
  }
  return "unknown";
}

AuctionInstance sweep_instance(const AuctionInstance &base, SweepParam param, double value,
                               const SweepOptions &options)
{
  const auto n = static_cast<std::size_t>(base.num_users());
  switch (param) {
  case SweepParam::ExpectedType:
    return base.with_distributions(std::vector<TypeDistribution>(
      n, TypeDistribution::uniform(value - 0.5 * options.width, value + 0.5 * options.width)));
  case SweepParam::SupportWidth:
    if (!(value > 0.0)) {
      throw ValidationError("support width must be positive");
    }
    return base.with_distributions(std::vector<TypeDistribution>(
      n, TypeDistribution::uniform(options.center - 0.5 * value, options.center + 0.5 * value)));
  case SweepParam::Lambda:
    return base.with_distributions(
      std::vector<TypeDistribution>(n, TypeDistribution::exponential(value)));
  case SweepParam::PopularityK: {
    const Index k = as_count(value, "popularity k");
    if (k > base.num_users()) {
      throw ValidationError("popularity k exceeds the number of users");
    }
    std::vector<std::vector<Index>> sets;
    for (Index i = 0; i < base.num_contents(); ++i) {
      sets.push_back(random_subset(base.num_users(), k, options.structure_seed,
                                   static_cast<std::uint64_t>(i)));
    }
    return base.with_interests(
      InterestStructure::from_sets(base.num_contents(), base.num_users(), std::move(sets)));
  }
  case SweepParam::NumUsers: {
    const Index users = as_count(value, "num_users");
    const double share = base.interests().audience_sizes().mean() /
                         static_cast<double>(base.num_users());
    const auto k = std::clamp<Index>(static_cast<Index>(std::lround(share * users)), 0, users);
    std::vector<std::vector<Index>> sets;
    for (Index i = 0; i < base.num_contents(); ++i) {
      sets.push_back(random_subset(users, k, options.structure_seed + static_cast<std::uint64_t>(users),
                                   static_cast<std::uint64_t>(i)));
    }
    std::vector<TypeDistribution> dists;
    for (Index j = 0; j < users; ++j) {
      dists.push_back(base.distribution(j % base.num_users()));
    }
    return {InterestStructure::from_sets(base.num_contents(), users, std::move(sets)),
            base.content_prices(), base.cost(), base.theta(), std::move(dists)};
  }
  case SweepParam::Alpha:
    return base.with_cost(base.cost().with_alpha(value));
  case SweepParam::Epsilon:
    break;
  }
  throw ValidationError("epsilon sweeps reuse the base instance; use run_sweep");
}

std::vector<SweepRow> run_sweep(const AuctionInstance &base, SweepParam param,
                                const std::vector<double> &values, std::int64_t trials,
                                std::uint64_t seed, int threads, const SweepOptions &options)
{
  std::vector<SweepRow> rows;
  for (double value : values) {
    SimulationReport report;
    if (param == SweepParam::Epsilon) {
      MismatchConfig mismatch;
      mismatch.epsilon = value;
      mismatch.mode = base.distribution(0).kind() == TypeDistribution::Kind::Exponential
                        ? MismatchConfig::Mode::ExponentialRateScale
                        : MismatchConfig::Mode::UniformWiden;
      const auto believed =
        base.with_distributions(estimated_distributions(base.distributions(), mismatch));
      report = simulate_with_true_types(believed, base.distributions(), trials, seed, threads);
    } else {
      report = simulate(sweep_instance(base, param, value, options), trials, seed, threads);
    }
    rows.push_back({value, report.er_direct, report.avg_user_utility});
  }
  return rows;
}

bool monotone_within(const std::vector<SweepRow> &rows, Trend trend, double sigmas)
{
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double step = rows[k].er.mean - rows[k - 1].er.mean;
    const double slack = sigmas * combined_std_error(rows[k].er, rows[k - 1].er);
    if (trend == Trend::NonDecreasing ? step < -slack : step > slack) {
      return false;
    }
  }
  return true;
}

CsvTable sweep_table(const std::vector<SweepRow> &rows, const std::string &value_column)
{
  CsvTable table({value_column, "er_estimate", "std_error", "avg_user_utility"});
  for (const auto &row : rows) {
    table.add_row(std::vector<double>{row.value, row.er.mean, row.er.std_error,
                                      row.avg_user_utility.mean});
  }
  return table;
}

Json sweep_json(const std::vector<SweepRow> &rows, const std::string &value_column)
{
  Json out = Json::array();
  for (const auto &row : rows) {
    out.push_back({{value_column, row.value},
                   {"er", to_json(row.er)},
                   {"avg_user_utility", to_json(row.avg_user_utility)}});
  }
  return out;
}

CsvTable user_table(const SimulationReport &report)
{
  CsvTable table({"user", "expected_payment", "expected_utility", "expected_fraction"});
  for (std::size_t j = 0; j < report.per_user.size(); ++j) {
    const auto &u = report.per_user[j];
    table.add_row(std::vector<double>{static_cast<double>(j + 1), u.expected_payment.mean,
                                      u.expected_utility.mean, u.expected_fraction.mean});
  }
  return table;
}

OracleComparison compare_payments_to_oracle(const AuctionInstance &inst, std::int64_t profiles,
                                            std::uint64_t seed, double tolerance,
                                            int grid_points)
{
  OracleComparison out;
  out.profiles = profiles;
  for (std::int64_t p = 0; p < profiles; ++p) {
    TrialStream stream(seed, static_cast<std::uint64_t>(p));
    const TypeProfile t = draw_profile(inst.distributions(), stream);
    for (Index j = 0; j < inst.num_users(); ++j) {
      const double closed = payment_closed_form(inst, t, j).payment;
      const double brute = payment_oracle(inst, t, j, grid_points);
      out.max_abs_difference = std::max(out.max_abs_difference, std::abs(closed - brute));
      ++out.comparisons;
    }
  }
  out.passed = out.max_abs_difference <= tolerance;
  return out;
}

MonotonicityCheck check_allocation_monotonicity(const AuctionInstance &inst,
                                                std::int64_t profiles, std::uint64_t seed,
                                                int grid_points)
{
  MonotonicityCheck out;
  for (std::int64_t p = 0; p < profiles; ++p) {
    TrialStream stream(seed, static_cast<std::uint64_t>(p));
    TypeProfile t = draw_profile(inst.distributions(), stream);
    for (Index j = 0; j < inst.num_users(); ++j) {
      const double keep = t(j);
      double previous = 0.0;
      for (double tau : user_type_grid(inst.distribution(j), grid_points)) {
        t(j) = tau;
        const double served = allocated_fraction(inst, allocate(inst, t), j);
        if (served < previous) {
          ++out.violations;
        }
        previous = served;
      }
      t(j) = keep;
      ++out.sweeps;
    }
  }
  return out;
}

std::vector<CheckResult> run_checks(const AuctionInstance &inst,
                                    const std::vector<std::string> &checks,
                                    const VerifyOptions &options)
{
  std::vector<CheckResult> results;
  std::optional<SimulationReport> sim;
  auto simulation = [&]() -> const SimulationReport & {
    if (!sim) {
      sim = simulate(inst, options.trials, options.seed, options.threads);
    }
    return *sim;
  };

  for (const auto &name : checks) {
    CheckResult result;
    result.name = name;
    if (name == "ic") {
      result.passed = true;
      result.detail = Json::array();
      for (Index j = 0; j < inst.num_users(); ++j) {
        const auto report = verify_ic(inst, j, options.type_grid, options.report_grid,
                                      options.trials, options.seed, options.sigmas, {},
                                      options.threads);
        result.passed = result.passed && report.passed();
        result.detail.push_back({{"user", j + 1},
                                 {"violations", report.violations},
                                 {"worst_margin", report.worst_margin}});
      }
    } else if (name == "ir") {
      const auto report =
        verify_ir(inst, options.trials, options.seed, options.type_grid, options.sigmas,
                  options.threads);
      result.passed = report.passed();
      result.detail = to_json(report);
    } else if (name == "oracle") {
      const auto cmp = compare_payments_to_oracle(inst, options.oracle_profiles, options.seed);
      result.passed = cmp.passed;
      result.detail = {{"profiles", cmp.profiles},
                       {"comparisons", cmp.comparisons},
                       {"max_abs_difference", cmp.max_abs_difference}};
    } else if (name == "monotonicity") {
      const auto mono =
        check_allocation_monotonicity(inst, options.oracle_profiles, options.seed);
      result.passed = mono.passed();
      result.detail = {{"sweeps", mono.sweeps}, {"violations", mono.violations}};
    } else if (name == "prop4") {
      const auto &report = simulation();
      result.passed = report.zero_payment_violations == 0;
      result.detail = {{"trials", report.trials},
                       {"zero_payment_violations", report.zero_payment_violations}};
    } else if (name == "revenue-forms") {
      const auto &report = simulation();
      const double gap = std::abs(report.er_direct.mean - report.er_virtual.mean);
      const double slack = options.sigmas * combined_std_error(report.er_direct, report.er_virtual);
      result.passed = gap <= slack;
      result.detail = {{"er_direct", to_json(report.er_direct)},
                       {"er_virtual", to_json(report.er_virtual)},
                       {"gap", gap},
                       {"allowed", slack}};
    } else {
      throw ValidationError("unknown check '" + name + "'");
    }
    results.push_back(std::move(result));
  }
  return results;
}

ExperimentConfig experiment_config_from_json(const Json &doc)
{
  static const std::vector<std::string> kKeys = {
    "experiment", "instance", "generator", "sweep", "trials", "seed",
    "threads",    "output_dir", "format",  "width", "center", "structure_seed"};
  if (!doc.is_object()) {
    throw ValidationError("experiment config must be a JSON object");
  }
  for (const auto &item : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), item.key()) == kKeys.end()) {
      throw ValidationError("unknown key '" + item.key() + "' in experiment config");
    }
  }
  ExperimentConfig config;
  try {
    config.name = doc.at("experiment").get<std::string>();
    if (doc.contains("instance")) config.instance = doc.at("instance");
    if (doc.contains("generator")) config.generator = doc.at("generator");
    if (config.instance && config.generator) {
      throw ValidationError("experiment config takes an instance or a generator, not both");
    }
    if (doc.contains("sweep")) {
      const Json &sweep = doc.at("sweep");
      for (const auto &item : sweep.items()) {
        if (item.key() != "param" && item.key() != "range") {
          throw ValidationError("unknown key '" + item.key() + "' in sweep");
        }
      }
      if (sweep.contains("param")) config.sweep_param = parse_sweep_param(sweep.at("param").get<std::string>());
      if (sweep.contains("range")) {
        config.sweep_range = sweep.at("range").get<std::string>();
        if (parse_range(*config.sweep_range).empty()) {
          throw ValidationError("sweep range is empty");
        }
      }
    }
    if (doc.contains("trials")) config.trials = doc.at("trials").get<std::int64_t>();
    if (doc.contains("seed")) config.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("threads")) config.threads = doc.at("threads").get<int>();
    if (doc.contains("output_dir")) config.output_dir = doc.at("output_dir").get<std::string>();
    if (doc.contains("format")) config.format = doc.at("format").get<std::string>();
    if (doc.contains("width")) config.sweep_options.width = doc.at("width").get<double>();
    if (doc.contains("center")) config.sweep_options.center = doc.at("center").get<double>();
    if (doc.contains("structure_seed")) {
      config.sweep_options.structure_seed = doc.at("structure_seed").get<std::uint64_t>();
    }
  } catch (const Json::exception &e) {
    throw ValidationError(std::string("malformed experiment config: ") + e.what());
  }
  if (config.trials < 1) {
    throw ValidationError("trials must be at least 1");
  }
  if (config.format != "csv" && config.format != "json") {
    throw ValidationError("format must be 'csv' or 'json'");
  }
  return config;
}

namespace {

struct SweepPlan
{
  SweepParam param;
  std::string range;
  Trend trend;
  std::string file;
};

AuctionInstance resolve_instance(const ExperimentConfig &config, const Json &default_generator)
{
  if (config.instance) {
    return instance_from_json(*config.instance);
  }
  return generate_instance(config.generator ? *config.generator : default_generator);
}

std::string emit(const ExperimentConfig &config, const std::string &stem, const CsvTable &table,
                 const Json &json)
{
  std::filesystem::create_directories(config.output_dir);
  const bool as_json = config.format == "json";
  const std::string path = join_path(config.output_dir, stem + (as_json ? ".json" : ".csv"));
  write_text_file(path, as_json ? json.dump(2) + "\n" : table.str());
  return path;
}

void summarize_sweep(std::ostringstream &out, const std::string &label,
                     const std::vector<SweepRow> &rows)
{
  out << label << '\n';
  out << "  value        ER (+/- se)              avg utility\n";
  for (const auto &row : rows) {
    out << "  " << format_number(row.value) << "\t" << format_number(row.er.mean) << " +/- "
        << format_number(row.er.std_error) << "\t" << format_number(row.avg_user_utility.mean)
        << '\n';
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig &config)
{
  ExperimentResult result;
  std::ostringstream summary;
  const Json uniform_generator = {{"family", "section4_uniform"}};
  const Json exponential_generator = {{"family", "section4_exponential"}};
  const Json large_generator = {{"family", "homogeneous"}};

  auto do_sweeps = [&](const AuctionInstance &base, std::vector<SweepPlan> plans) {
    if (config.sweep_param) {
      plans.erase(std::remove_if(plans.begin(), plans.end(),
                                 [&](const SweepPlan &p) { return p.param != *config.sweep_param; }),
                  plans.end());
      if (plans.empty()) {
        throw ValidationError("experiment '" + config.name + "' has no sweep over '" +
                              to_string(*config.sweep_param) + "'");
      }
    }
    for (auto &plan : plans) {
      if (config.sweep_range) {
        plan.range = *config.sweep_range;
      }
      const auto rows = run_sweep(base, plan.param, parse_range(plan.range), config.trials,
                                  config.seed, config.threads, config.sweep_options);
      result.files.push_back(emit(config, plan.file, sweep_table(rows, to_string(plan.param)),
                                  sweep_json(rows, to_string(plan.param))));
      summarize_sweep(summary, std::string(to_string(plan.param)) + " sweep", rows);
    }
  };

  if (config.name == "fig2_users") {
    const auto inst = resolve_instance(config, uniform_generator);
    const auto report = simulate(inst, config.trials, config.seed, config.threads);
    result.files.push_back(emit(config, "fig2_users", user_table(report), to_json(report)));
    summary << "expected allocation:";
    for (const auto &e : report.expected_allocation) {
      summary << ' ' << format_number(e.mean);
    }
    summary << "\nidle fraction: " << format_number(report.idle_fraction.mean) << '\n'
            << user_table(report).str();
  } else if (config.name == "fig3_distributions") {
    const auto base = resolve_instance(config, uniform_generator);
    do_sweeps(base, {{SweepParam::ExpectedType, "2:6.5:0.5", Trend::NonDecreasing,
                      "fig3_expected_type"},
                     {SweepParam::SupportWidth, "1:9:1", Trend::NonIncreasing,
                      "fig3_support_width"},
                     {SweepParam::Lambda, "0.05:0.5:0.05", Trend::NonIncreasing, "fig3_lambda"}});
  } else if (config.name == "fig4_theta") {
    const auto inst = resolve_instance(config, large_generator);
    const auto grid = parse_range(config.sweep_range.value_or("1:10:1"));
    const auto curve = er_curve(inst, grid, config.trials, config.seed, config.threads);
    std::vector<SweepRow> rows;
    for (const auto &point : curve.curve) {
      rows.push_back({point.theta, point.er, point.avg_user_utility});
    }
    result.files.push_back(emit(config, "fig4_theta", sweep_table(rows, "theta"),
                                sweep_json(rows, "theta")));
    summarize_sweep(summary, "theta sweep", rows);
    summary << "argmax theta: " << format_number(curve.theta_star) << '\n';
  } else if (config.name == "fig5_popularity") {
    do_sweeps(resolve_instance(config, uniform_generator),
              {{SweepParam::PopularityK, "1:10:1", Trend::NonDecreasing, "fig5_popularity"}});
  } else if (config.name == "fig6_numusers") {
    do_sweeps(resolve_instance(config, uniform_generator),
              {{SweepParam::NumUsers, "10:100:10", Trend::NonDecreasing, "fig6_numusers"}});
  } else if (config.name == "fig7_alpha") {
    do_sweeps(resolve_instance(config, uniform_generator),
              {{SweepParam::Alpha, "0.1:1:0.1", Trend::NonIncreasing, "fig7_alpha"}});
  } else if (config.name == "fig8_mismatch") {
    if (config.instance || config.generator) {
      do_sweeps(resolve_instance(config, uniform_generator),
                {{SweepParam::Epsilon, "0:1:0.1", Trend::NonIncreasing, "fig8_mismatch"}});
    } else {
      do_sweeps(section4_uniform(), {{SweepParam::Epsilon, "0:1:0.1", Trend::NonIncreasing,
                                      "fig8_mismatch_uniform"}});
      do_sweeps(section4_exponential(), {{SweepParam::Epsilon, "-0.9:1:0.1",
                                          Trend::NonIncreasing, "fig8_mismatch_exponential"}});
    }
  } else if (config.name == "custom") {
    const auto inst = resolve_instance(config, uniform_generator);
    if (config.trials == 1) {
      TrialStream stream(config.seed, 0);
      const TypeProfile t = draw_profile(inst.distributions(), stream);
      const auto outcome = run_mechanism(inst, t);
      Json doc = {{"profile", std::vector<double>(t.data(), t.data() + t.size())},
                  {"outcome", to_json(outcome)}};
      std::filesystem::create_directories(config.output_dir);
      const auto path = join_path(config.output_dir, "custom_run.json");
      write_text_file(path, doc.dump(2) + "\n");
      result.files.push_back(path);
      summary << "single realization, realized SP profit "
              << format_number(outcome.realized_sp_profit) << '\n';
    } else {
      const auto report = simulate(inst, config.trials, config.seed, config.threads);
      result.files.push_back(emit(config, "custom_users", user_table(report), to_json(report)));
      summary << "ER " << format_number(report.er_direct.mean) << " +/- "
              << format_number(report.er_direct.std_error) << '\n';
    }
  } else {
    throw ValidationError("unknown experiment '" + config.name + "'");
  }
  result.summary = summary.str();
  return result;
}

}  // namespace cache_auction
