// Copyright 2026 The Offload Authors.
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

#include "offload/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "offload/allocation.h"
#include "offload/cost.h"
#include "offload/format.h"
#include "offload/kernels.h"
#include "offload/latency.h"
#include "offload/profiles.h"
#include "offload/simulator.h"
#include "offload/utility.h"

namespace offload {
namespace {

using ordered_json = nlohmann::ordered_json;
using Table = std::vector<std::vector<std::string>>;

struct Common {
  std::string config_path;
  std::string format;
};

struct FeasibilityArgs {
  double bandwidth_mbps = 200.0;
  double rtt_ms = 12.0;
};

struct CurvesArgs {
  std::optional<std::string> service;
  double rtt_ms = 12.0;
};

struct AllocateArgs {
  double budget_mbps = 0.0;
  std::string solver = "exact";
  double rtt_ms = 12.0;
};

struct SimulateArgs {
  std::vector<std::string> traces;
  std::string solver = "exact";
  std::string mode = "oracle";
  std::int64_t tick_ms = 100;
  std::optional<std::string> summary_out;
};

struct CostArgs {
  double uplink_mbps = 50.0;
  std::optional<std::string> country;
  std::optional<double> price_per_gb;
  std::optional<double> compute_hourly;
  std::optional<double> purchase;
  std::optional<double> utilization;
  std::optional<std::string> prices_path;
};

std::string RenderTable(const Table& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c] + std::string(width[c] - row[c].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string RenderCsv(const Table& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      out += row[c];
    }
    out += "\n";
  }
  return out;
}

void RequirePositive(double value, const char* flag) {
  if (!(value > 0.0)) throw ConfigError(std::string(flag) + " must be positive");
}

void RequireNonNegative(double value, const char* flag) {
  if (!(value >= 0.0)) {
    throw ConfigError(std::string(flag) + " must be non-negative");
  }
}

// --- feasibility -----------------------------------------------------------

void Feasibility(const Common& common, const FeasibilityArgs& args,
                 std::ostream& out) {
  RequirePositive(args.bandwidth_mbps, "--bandwidth-mbps");
  RequireNonNegative(args.rtt_ms, "--rtt-ms");
  const Config config = LoadConfig(common.config_path);
  const NetworkConditions net{args.bandwidth_mbps, args.rtt_ms};

  Table rows = {{"model", "local_hw", "cloud_hw", "accuracy", "payload_bits",
                 "exec_local_ms", "exec_cloud_ms", "transfer_ms", "total_ms",
                 "speedup"}};
  ordered_json json_rows = ordered_json::array();
  for (const auto& model : config.models) {
    const HardwareProfile* local = nullptr;
    for (const auto& hw : config.hardware) {
      if (hw.location == Location::kOnVehicle && model.exec_time_ms.count(hw.id)) {
        local = &hw;
        break;
      }
    }
    for (const auto& hw : config.hardware) {
      if (hw.location != Location::kCloud || !model.exec_time_ms.count(hw.id)) {
        continue;
      }
      const LatencyBreakdown cloud = TotalLatency(model, hw, net);
      ordered_json j = {{"model", model.id},
                        {"local_hw", local ? local->id : ""},
                        {"cloud_hw", hw.id},
                        {"accuracy", model.accuracy},
                        {"payload_bits", PayloadBits(model)}};
      std::string exec_local, speedup;
      if (local) {
        const double local_ms = TotalLatency(model, *local, net).total_ms;
        const double ratio = Speedup(model, *local, hw, net);
        exec_local = Fixed(local_ms, kMsPlaces);
        speedup = Fixed(ratio, 1);
        j["exec_local_ms"] = RoundTo(local_ms, kMsPlaces);
      } else {
        j["exec_local_ms"] = nullptr;
      }
      j["exec_cloud_ms"] = RoundTo(cloud.exec_ms, kMsPlaces);
      j["transfer_ms"] = RoundTo(cloud.transfer_ms(), kMsPlaces);
      j["total_ms"] = RoundTo(cloud.total_ms, kMsPlaces);
      if (local) {
        j["speedup"] = RoundTo(Speedup(model, *local, hw, net), 1);
      } else {
        j["speedup"] = nullptr;
      }
      json_rows.push_back(std::move(j));
      rows.push_back({model.id, local ? local->id : "", hw.id,
                      Fixed(model.accuracy, 1),
                      std::to_string(PayloadBits(model)), exec_local,
                      Fixed(cloud.exec_ms, kMsPlaces),
                      Fixed(cloud.transfer_ms(), kMsPlaces),
                      Fixed(cloud.total_ms, kMsPlaces), speedup});
    }
  }

  if (common.format == "csv") {
    out << RenderCsv(rows);
  } else if (common.format == "json") {
    ordered_json j = {{"bandwidth_mbps", RoundTo(args.bandwidth_mbps, kMbpsPlaces)},
                      {"rtt_ms", RoundTo(args.rtt_ms, kMsPlaces)},
                      {"rows", std::move(json_rows)}};
    out << j.dump(2) << "\n";
  } else {
    for (std::size_t r = 1; r < rows.size(); ++r) {
      if (!rows[r][9].empty()) rows[r][9] += "x";
    }
    out << RenderTable(rows);
  }
}

// --- curves ----------------------------------------------------------------

void Curves(const Common& common, const CurvesArgs& args, std::ostream& out) {
  RequireNonNegative(args.rtt_ms, "--rtt-ms");
  const Config config = LoadConfig(common.config_path);
  std::vector<const ServiceSpec*> services;
  if (args.service) {
    services.push_back(&config.Service(*args.service));
  } else {
    for (const auto& s : config.services) services.push_back(&s);
  }

  Table rows = {{"service", "bandwidth_mbps", "utility", "option_id"}};
  ordered_json json_services = ordered_json::array();
  for (const ServiceSpec* service : services) {
    const UtilityCurve curve = ServiceCurve(config, *service, args.rtt_ms);
    ordered_json bps = ordered_json::array();
    for (const auto& bp : curve.breakpoints()) {
      rows.push_back({service->name, Fixed(bp.bandwidth_mbps, kMbpsPlaces),
                      Fixed(bp.utility, kUtilityPlaces), bp.option_id});
      bps.push_back({{"bandwidth_mbps", RoundTo(bp.bandwidth_mbps, kMbpsPlaces)},
                     {"utility", RoundTo(bp.utility, kUtilityPlaces)},
                     {"option_id", bp.option_id}});
    }
    json_services.push_back({{"service", service->name},
                             {"slo_ms", service->slo_ms},
                             {"breakpoints", std::move(bps)}});
  }

  if (common.format == "json") {
    ordered_json j = {{"rtt_ms", RoundTo(args.rtt_ms, kMsPlaces)},
                      {"services", std::move(json_services)}};
    out << j.dump(2) << "\n";
  } else if (common.format == "table") {
    out << RenderTable(rows);
  } else {
    out << RenderCsv(rows);
  }
}

// --- allocate --------------------------------------------------------------

void Allocate(const Common& common, const AllocateArgs& args,
              std::ostream& out) {
  RequireNonNegative(args.budget_mbps, "--budget-mbps");
  RequireNonNegative(args.rtt_ms, "--rtt-ms");
  const Solver solver = ParseSolver(args.solver);
  const Config config = LoadConfig(common.config_path);
  const AllocationResult result =
      Solve(BuildProblem(config, args.rtt_ms, args.budget_mbps), solver);

  if (common.format == "json") {
    out << AllocationJson(result, SolverName(solver));
    return;
  }
  Table rows = {{"service", "bandwidth_mbps", "utility", "option_id"}};
  for (const auto& [name, grant] : result.grants) {
    rows.push_back({name, Fixed(grant.bandwidth_mbps, kMbpsPlaces),
                    Fixed(grant.utility, kUtilityPlaces), grant.option_id});
  }
  if (common.format == "csv") {
    out << RenderCsv(rows);
    return;
  }
  out << RenderTable(rows);
  out << "total utility " << Fixed(result.total_utility, kUtilityPlaces)
      << ", bandwidth " << Fixed(result.total_bandwidth_mbps, kMbpsPlaces)
      << " of " << Fixed(result.budget_mbps, kMbpsPlaces) << " Mbps ("
      << SolverName(solver) << (result.optimal ? ", optimal" : "") << ")\n";
}

// --- simulate --------------------------------------------------------------

void Simulate(const Common& common, const SimulateArgs& args,
              std::ostream& out) {
  if (args.tick_ms <= 0) throw ConfigError("--tick-ms must be positive");
  if (args.traces.size() > 1 && common.format != "json") {
    throw ConfigError("multiple --trace values require --format json");
  }
  SimulationOptions options;
  options.solver = ParseSolver(args.solver);
  options.mode = ParseMode(args.mode);
  options.tick_ms = args.tick_ms;
  const Config config = LoadConfig(common.config_path);
  std::vector<std::vector<TracePoint>> traces;
  for (const auto& path : args.traces) traces.push_back(LoadTrace(path));

  const std::vector<SimulationRun> runs =
      traces.size() > 1 ? parallel::RunSweep(config, traces, options)
                        : serial::RunSweep(config, traces, options);

  if (args.summary_out) {
    std::ofstream file(*args.summary_out);
    if (!file) throw ConfigError("cannot write '" + *args.summary_out + "'");
    file << SummaryJson(runs.front().summary);
  }
  if (common.format == "csv") {
    out << kTickCsvHeader << "\n" << TickCsvRows(runs.front().ticks);
  } else if (common.format == "json") {
    if (runs.size() == 1) {
      out << SummaryJson(runs.front().summary);
    } else {
      ordered_json j = ordered_json::array();
      for (std::size_t i = 0; i < runs.size(); ++i) {
        j.push_back({{"trace", args.traces[i]},
                     {"summary", ordered_json::parse(SummaryJson(runs[i].summary))}});
      }
      out << j.dump(2) << "\n";
    }
  } else {
    const SimulationSummary& s = runs.front().summary;
    Table rows = {{"ticks", std::to_string(s.ticks)},
                  {"duration_ms", std::to_string(s.duration_ms)},
                  {"mean_total_utility", Fixed(s.mean_total_utility, kUtilityPlaces)},
                  {"min_total_utility", Fixed(s.min_total_utility, kUtilityPlaces)},
                  {"fallbacks", std::to_string(s.fallback_count)},
                  {"slo_misses", std::to_string(s.slo_miss_count)},
                  {"total_bits", std::to_string(s.total_bits)},
                  {"usd_per_hour", Fixed(s.cost.total_usd_per_hour, kUsdPlaces)}};
    out << RenderTable(rows);
  }
}

// --- cost ------------------------------------------------------------------

void Cost(const Common& common, const CostArgs& args, std::ostream& out) {
  RequireNonNegative(args.uplink_mbps, "--uplink-mbps");
  if (args.price_per_gb) RequireNonNegative(*args.price_per_gb, "--price-per-gb");
  if (args.compute_hourly) {
    RequireNonNegative(*args.compute_hourly, "--compute-hourly");
  }
  if (args.purchase) RequireNonNegative(*args.purchase, "--purchase");
  if (args.utilization &&
      !(*args.utilization > 0.0 && *args.utilization <= 1.0)) {
    throw ConfigError("--utilization must be within (0, 1]");
  }
  const Config config = LoadConfig(common.config_path);

  const std::filesystem::path prices_path =
      args.prices_path ? std::filesystem::path(*args.prices_path)
                       : std::filesystem::path(common.config_path).parent_path() /
                             "country_prices.csv";
  std::vector<CountryPrice> prices;
  if (args.prices_path || args.country ||
      std::filesystem::exists(prices_path)) {
    prices = LoadCountryPrices(prices_path.string());
  }

  std::string source = "config";
  double price = config.economics.network_price_usd_per_gb;
  if (args.country) {
    auto it = std::find_if(prices.begin(), prices.end(), [&](const auto& p) {
      return p.country == *args.country;
    });
    if (it == prices.end()) {
      throw ConfigError("unknown country '" + *args.country + "'");
    }
    source = it->country;
    price = it->usd_per_gb;
  } else if (args.price_per_gb) {
    source = "price-per-gb";
    price = *args.price_per_gb;
  }

  const HardwareProfile hw = CostHardware(config, {});
  const double compute = args.compute_hourly.value_or(hw.hourly_cost_usd);
  const std::optional<double> purchase =
      args.purchase ? args.purchase : hw.purchase_cost_usd;
  const double utilization =
      args.utilization.value_or(config.economics.utilization_fraction);

  CostBreakdown cost;
  cost.data_gb_per_hour = DataGbPerHour(args.uplink_mbps);
  cost.network_usd_per_hour = NetworkCostPerHour(args.uplink_mbps, price);
  cost.compute_usd_per_hour = compute;
  cost.total_usd_per_hour = cost.network_usd_per_hour + compute;

  auto years = [&](double hourly) -> ordered_json {
    if (!purchase || !(hourly > 0.0)) return nullptr;
    return RoundTo(BreakEvenYears(*purchase, hourly, utilization), 2);
  };

  Table rows = {{"rank", "country", "usd_per_gb", "usd_per_hour"}};
  ordered_json countries = ordered_json::array();
  for (const auto& p : prices) {
    const double hourly = NetworkCostPerHour(args.uplink_mbps, p.usd_per_gb);
    const std::string rank = p.rank ? std::to_string(*p.rank) : "--";
    rows.push_back({rank, p.country, Fixed(p.usd_per_gb, 3),
                    Fixed(hourly, kUsdPlaces)});
    countries.push_back(
        {{"rank", p.rank ? ordered_json(*p.rank) : ordered_json(nullptr)},
         {"country", p.country},
         {"usd_per_gb", p.usd_per_gb},
         {"network_usd_per_hour", RoundTo(hourly, kUsdPlaces)}});
  }

  if (common.format == "csv") {
    out << RenderCsv(rows);
    return;
  }
  ordered_json j;
  j["uplink_mbps"] = RoundTo(args.uplink_mbps, kMbpsPlaces);
  j["data_gb_per_hour"] = RoundTo(cost.data_gb_per_hour, 3);
  j["price_source"] = source;
  j["price_usd_per_gb"] = price;
  j["network_usd_per_hour"] = RoundTo(cost.network_usd_per_hour, kUsdPlaces);
  j["compute_usd_per_hour"] = RoundTo(cost.compute_usd_per_hour, kUsdPlaces);
  j["total_usd_per_hour"] = RoundTo(cost.total_usd_per_hour, kUsdPlaces);
  j["utilization_fraction"] = utilization;
  j["purchase_usd"] = purchase ? ordered_json(*purchase) : ordered_json(nullptr);
  j["break_even_years_compute"] = years(cost.compute_usd_per_hour);
  j["break_even_years_total"] = years(cost.total_usd_per_hour);
  j["countries"] = std::move(countries);
  if (common.format == "json") {
    out << j.dump(2) << "\n";
    return;
  }
  Table summary = {
      {"price", source + " $" + Fixed(price, 3) + "/GB"},
      {"data", Fixed(cost.data_gb_per_hour, 3) + " GB/hour"},
      {"network", "$" + Fixed(cost.network_usd_per_hour, kUsdPlaces) + "/hour"},
      {"compute", "$" + Fixed(cost.compute_usd_per_hour, kUsdPlaces) + "/hour"},
      {"total", "$" + Fixed(cost.total_usd_per_hour, kUsdPlaces) + "/hour"}};
  if (!j["break_even_years_total"].is_null()) {
    summary.push_back({"break-even", Fixed(j["break_even_years_total"].get<double>(), 2) +
                                         " years at " + Fixed(utilization, 4) +
                                         " utilization"});
  }
  out << RenderTable(summary);
  if (rows.size() > 1) out << "\n" << RenderTable(rows);
}

void AddCommon(CLI::App* sub, Common* common, const std::string& default_format) {
  common->format = default_format;
  sub->add_option("--config", common->config_path, "Configuration JSON")
      ->required();
  sub->add_option("--format", common->format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Bandwidth allocation for offloaded vehicle services", "offload"};
  app.require_subcommand(1);

  Common feas_common, curv_common, alloc_common, sim_common, cost_common;
  FeasibilityArgs feasibility;
  CurvesArgs curves;
  AllocateArgs allocate;
  SimulateArgs simulate;
  CostArgs cost;

  auto* feas = app.add_subcommand("feasibility", "Latency and speedup per model");
  AddCommon(feas, &feas_common, "table");
  feas->add_option("--bandwidth-mbps", feasibility.bandwidth_mbps,
                   "Uplink bandwidth");
  feas->add_option("--rtt-ms", feasibility.rtt_ms, "Round-trip time");

  auto* curv = app.add_subcommand("curves", "Service utility curve breakpoints");
  AddCommon(curv, &curv_common, "csv");
  curv->add_option("--service", curves.service, "Only this service");
  curv->add_option("--rtt-ms", curves.rtt_ms, "Round-trip time");

  auto* alloc = app.add_subcommand("allocate", "Divide an uplink budget");
  AddCommon(alloc, &alloc_common, "json");
  alloc->add_option("--budget-mbps", allocate.budget_mbps, "Uplink budget")->required();
  alloc->add_option("--solver", allocate.solver, "Allocation solver")
      ->check(CLI::IsMember({"exact", "greedy", "maxmin", "bruteforce"}));
  alloc->add_option("--rtt-ms", allocate.rtt_ms, "Round-trip time");

  auto* sim = app.add_subcommand("simulate", "Replay bandwidth/RTT traces");
  AddCommon(sim, &sim_common, "csv");
  sim->add_option("--trace", simulate.traces, "Trace CSV (repeatable)")->required();
  sim->add_option("--solver", simulate.solver, "Allocation solver")
      ->check(CLI::IsMember({"exact", "greedy", "maxmin", "bruteforce"}));
  sim->add_option("--mode", simulate.mode, "Planning conditions")
      ->check(CLI::IsMember({"oracle", "estimate"}));
  sim->add_option("--tick-ms", simulate.tick_ms, "Tick period");
  sim->add_option("--summary-out", simulate.summary_out,
                  "Also write the summary JSON here");

  auto* cst = app.add_subcommand("cost", "Hourly cost and break-even");
  AddCommon(cst, &cost_common, "json");
  cst->add_option("--uplink-mbps", cost.uplink_mbps, "Sustained uplink");
  auto* country = cst->add_option("--country", cost.country, "Price from the table");
  auto* price = cst->add_option("--price-per-gb", cost.price_per_gb, "Explicit price");
  country->excludes(price);
  cst->add_option("--compute-hourly", cost.compute_hourly,
                  "Cloud compute rate");
  cst->add_option("--purchase", cost.purchase, "Hardware purchase price");
  cst->add_option("--utilization", cost.utilization, "Fraction of hours used");
  cst->add_option("--prices", cost.prices_path, "Country price CSV");

  std::vector<std::string> argv_storage = {"offload"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
    err << "offload: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (feas->parsed()) Feasibility(feas_common, feasibility, out);
    if (curv->parsed()) Curves(curv_common, curves, out);
    if (alloc->parsed()) Allocate(alloc_common, allocate, out);
    if (sim->parsed()) Simulate(sim_common, simulate, out);
    if (cst->parsed()) Cost(cost_common, cost, out);
  } catch (const ConfigError& e) {
    err << "offload: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "offload: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace offload
