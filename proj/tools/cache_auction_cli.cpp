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

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cache_auction/errors.hpp"
#include "cache_auction/experiments.hpp"
#include "cache_auction/io.hpp"
#include "cache_auction/mechanism.hpp"
#include "cache_auction/quality.hpp"
#include "cache_auction/simulation.hpp"

namespace ca = cache_auction;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitProperty = 3;

struct CommonOptions
{
  std::string instance;
  std::string config;
  std::int64_t trials = ca::kDefaultTrials;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  std::string format = "csv";
  double sigmas = ca::kDefaultSigmas;
  bool check_regularity = false;
};

void add_source_options(CLI::App *cmd, CommonOptions &opts)
{
  auto *inst = cmd->add_option("--instance", opts.instance, "Instance JSON file");
  auto *cfg = cmd->add_option("--config", opts.config,
                              "Generator JSON file, e.g. {\"family\": \"section4_uniform\"}");
  inst->excludes(cfg);
  cmd->add_flag("--check-regularity", opts.check_regularity,
                "Print a regularity report for every user first");
}

void add_run_options(CLI::App *cmd, CommonOptions &opts, bool with_format = true)
{
  cmd->add_option("--trials", opts.trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts.seed, "Master seed");
  cmd->add_option("--threads", opts.threads,
                  "Worker threads (0 = all cores; CACHE_AUCTION_THREADS overrides)");
  cmd->add_option("--out", opts.out, "Output file (stdout when omitted)");
  if (with_format) {
    cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  }
  cmd->add_option("--sigmas", opts.sigmas, "Statistical pass threshold in standard errors")
    ->check(CLI::PositiveNumber);
}

ca::AuctionInstance load_instance(const CommonOptions &opts)
{
  if (!opts.instance.empty()) {
    return ca::instance_from_json(ca::read_json_file(opts.instance));
  }
  if (!opts.config.empty()) {
    return ca::generate_instance(ca::read_json_file(opts.config));
  }
  throw CLI::ValidationError("one of --instance or --config is required");
}

void emit(const std::string &path, const std::string &text)
{
  if (path.empty()) {
    std::cout << text;
  } else {
    ca::write_text_file(path, text);
  }
}

void print_regularity(const ca::AuctionInstance &inst)
{
  ca::Json doc = ca::Json::array();
  for (ca::Index j = 0; j < inst.num_users(); ++j) {
    auto entry = ca::to_json(ca::check_regularity(inst.distribution(j)));
    entry["user"] = j + 1;
    doc.push_back(std::move(entry));
  }
  std::cerr << doc.dump(2) << '\n';
}

std::vector<std::string> split_list(const std::string &text)
{
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) {
      items.push_back(item);
    }
  }
  return items;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Optimal auction for mobile edge caching: allocation, payments and Monte-Carlo checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cache-auction 1.0.0");

  CommonOptions opts;

  auto *run = app.add_subcommand("run", "Run the mechanism on one reported profile");
  std::string profile_path;
  add_source_options(run, opts);
  run->add_option("--profile", profile_path, "JSON array of n reported types")->required();
  run->add_option("--out", opts.out, "Output file (stdout when omitted)");

  auto *simulate = app.add_subcommand("simulate", "Estimate revenue, allocation and utilities");
  add_source_options(simulate, opts);
  add_run_options(simulate, opts);

  auto *verify = app.add_subcommand("verify", "Run property checks (exit 3 on failure)");
  std::string checks = "ic,ir,oracle,monotonicity,prop4,revenue-forms";
  ca::VerifyOptions vopts;
  add_source_options(verify, opts);
  add_run_options(verify, opts);
  verify->add_option("--checks", checks, "Comma-separated subset of " + checks);
  verify->add_option("--type-grid", vopts.type_grid, "True types per user")->check(CLI::Range(2, 1000));
  verify->add_option("--report-grid", vopts.report_grid, "Reports per true type")->check(CLI::Range(2, 1000));
  verify->add_option("--oracle-profiles", vopts.oracle_profiles, "Profiles for oracle and monotonicity")
    ->check(CLI::PositiveNumber);

  auto *sweep = app.add_subcommand("sweep", "Sweep one market parameter");
  std::string param_name, range;
  ca::SweepOptions sopts;
  add_source_options(sweep, opts);
  add_run_options(sweep, opts);
  sweep->add_option("--param", param_name,
                    "expected_type|support_width|lambda|popularity_k|num_users|alpha|epsilon")
    ->required();
  sweep->add_option("--range", range, "a:b:step")->required();
  sweep->add_option("--width", sopts.width, "Support width held fixed by expected_type");
  sweep->add_option("--center", sopts.center, "Mean held fixed by support_width");
  sweep->add_option("--structure-seed", sopts.structure_seed, "Seed for resampled audiences");

  auto *sweep_theta = app.add_subcommand("sweep-theta", "Estimate ER over a quality grid");
  std::string grid;
  add_source_options(sweep_theta, opts);
  add_run_options(sweep_theta, opts);
  sweep_theta->add_option("--grid", grid, "a:b:step")->required();

  auto *experiment = app.add_subcommand("experiment", "Run a named experiment from a config file");
  std::string experiment_config;
  std::optional<std::int64_t> exp_trials;
  std::optional<std::uint64_t> exp_seed;
  std::optional<int> exp_threads;
  std::optional<std::string> exp_out, exp_format;
  experiment->add_option("--config", experiment_config, "Experiment JSON file")->required();
  experiment->add_option("--trials", exp_trials, "Override trials")->check(CLI::PositiveNumber);
  experiment->add_option("--seed", exp_seed, "Override seed");
  experiment->add_option("--threads", exp_threads, "Override threads");
  experiment->add_option("--out", exp_out, "Override output directory");
  experiment->add_option("--format", exp_format, "Override format")
    ->check(CLI::IsMember({"csv", "json"}));

  auto *gen = app.add_subcommand("gen-instance", "Materialize a generated instance as JSON");
  std::string family;
  std::optional<ca::Index> gen_users;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("--config", opts.config, "Generator JSON file");
  gen->add_option("--family", family, "section4_uniform|section4_exponential|homogeneous");
  gen->add_option("--num-users", gen_users, "Users for the homogeneous family");
  gen->add_option("--seed", gen_seed, "Audience seed for the homogeneous family");
  gen->add_option("--out", opts.out, "Output file (stdout when omitted)");

  auto *regularity = app.add_subcommand("check-regularity", "Check every user's distribution");
  int grid_points = 1001;
  regularity->add_option("--instance", opts.instance, "Instance JSON file")->required();
  regularity->add_option("--grid-points", grid_points, "Grid size")->check(CLI::Range(3, 10000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      const auto inst = load_instance(opts);
      if (opts.check_regularity) print_regularity(inst);
      const auto reports = ca::profile_from_json(ca::read_json_file(profile_path));
      emit(opts.out, ca::to_json(ca::run_mechanism(inst, reports)).dump(2) + "\n");
      return kExitOk;
    }

    if (*simulate) {
      const auto inst = load_instance(opts);
      if (opts.check_regularity) print_regularity(inst);
      const auto report = ca::simulate(inst, opts.trials, opts.seed, opts.threads);
      if (opts.format == "json") {
        emit(opts.out, ca::to_json(report).dump(2) + "\n");
      } else {
        emit(opts.out, ca::user_table(report).str());
      }
      std::cerr << "ER " << ca::format_number(report.er_direct.mean) << " +/- "
                << ca::format_number(report.er_direct.std_error) << " (virtual form "
                << ca::format_number(report.er_virtual.mean) << "), idle "
                << ca::format_number(report.idle_fraction.mean) << '\n';
      return kExitOk;
    }

    if (*verify) {
      const auto inst = load_instance(opts);
      if (opts.check_regularity) print_regularity(inst);
      vopts.trials = opts.trials;
      vopts.seed = opts.seed;
      vopts.sigmas = opts.sigmas;
      vopts.threads = opts.threads;
      const auto results = ca::run_checks(inst, split_list(checks), vopts);
      bool all = true;
      if (opts.format == "json") {
        ca::Json doc = ca::Json::array();
        for (const auto &r : results) {
          doc.push_back({{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        }
        emit(opts.out, doc.dump(2) + "\n");
      } else {
        ca::CsvTable table({"check", "passed"});
        for (const auto &r : results) {
          table.add_row(std::vector<std::string>{r.name, r.passed ? "true" : "false"});
        }
        emit(opts.out, table.str());
      }
      for (const auto &r : results) {
        all = all && r.passed;
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << '\n';
      }
      return all ? kExitOk : kExitProperty;
    }

    if (*sweep) {
      const auto base = load_instance(opts);
      const auto param = ca::parse_sweep_param(param_name);
      const auto rows = ca::run_sweep(base, param, ca::parse_range(range), opts.trials, opts.seed,
                                      opts.threads, sopts);
      emit(opts.out, opts.format == "json"
                       ? ca::sweep_json(rows, ca::to_string(param)).dump(2) + "\n"
                       : ca::sweep_table(rows, ca::to_string(param)).str());
      return kExitOk;
    }

    if (*sweep_theta) {
      const auto inst = load_instance(opts);
      const auto curve =
        ca::er_curve(inst, ca::parse_range(grid), opts.trials, opts.seed, opts.threads);
      std::vector<ca::SweepRow> rows;
      for (const auto &p : curve.curve) {
        rows.push_back({p.theta, p.er, p.avg_user_utility});
      }
      emit(opts.out, opts.format == "json" ? ca::sweep_json(rows, "theta").dump(2) + "\n"
                                           : ca::sweep_table(rows, "theta").str());
      std::cerr << "argmax theta " << ca::format_number(curve.theta_star) << '\n';
      return kExitOk;
    }

    if (*experiment) {
      auto config = ca::experiment_config_from_json(ca::read_json_file(experiment_config));
      if (exp_trials) config.trials = *exp_trials;
      if (exp_seed) config.seed = *exp_seed;
      if (exp_threads) config.threads = *exp_threads;
      if (exp_out) config.output_dir = *exp_out;
      if (exp_format) config.format = *exp_format;
      const auto result = ca::run_experiment(config);
      std::cout << result.summary;
      for (const auto &file : result.files) {
        std::cout << "wrote " << file << '\n';
      }
      return kExitOk;
    }

    if (*gen) {
      ca::Json params;
      if (!opts.config.empty()) {
        params = ca::read_json_file(opts.config);
      } else if (!family.empty()) {
        params = {{"family", family}};
      } else {
        throw CLI::ValidationError("one of --config or --family is required");
      }
      if (gen_users) params["num_users"] = *gen_users;
      if (gen_seed) params["seed"] = *gen_seed;
      emit(opts.out, ca::instance_to_json(ca::generate_instance(params)).dump(2) + "\n");
      return kExitOk;
    }

    if (*regularity) {
      // Load without the strict check so irregular users can be reported.
      auto doc = ca::read_json_file(opts.instance);
      doc["strict_regularity"] = false;
      const auto inst = ca::instance_from_json(doc);
      ca::Json out = ca::Json::array();
      bool all = true;
      for (ca::Index j = 0; j < inst.num_users(); ++j) {
        const auto report = ca::check_regularity(inst.distribution(j), grid_points);
        all = all && report.regular;
        auto entry = ca::to_json(report);
        entry["user"] = j + 1;
        out.push_back(std::move(entry));
      }
      std::cout << out.dump(2) << '\n';
      return all ? kExitOk : kExitProperty;
    }
  } catch (const CLI::ValidationError &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ca::ValidationError &e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ca::ConsistencyError &e) {
    std::cerr << "internal consistency failure: " << e.what() << '\n';
    return kExitProperty;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}
