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

#include "offload/simulator.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "offload/format.h"
#include "offload/latency.h"

namespace offload {
namespace {

std::string Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

double ParseDouble(const std::string& field, const std::string& where) {
  double value = 0.0;
  auto [p, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() ||
      p != field.data() + field.size()) {
    throw ConfigError(where + ": bad number '" + field + "'");
  }
  return value;
}

// Service-level lookups resolved once per run.
struct ServiceContext {
  const ServiceSpec* spec = nullptr;
  double local_accuracy = 0.0;
  std::map<std::string, ModelOption> options;  // option id -> placement
};

NetworkConditions ConditionsAt(std::span<const TracePoint> trace,
                               std::int64_t t_ms) {
  auto it = std::upper_bound(
      trace.begin(), trace.end(), t_ms,
      [](std::int64_t t, const TracePoint& p) { return t < p.t_ms; });
  const TracePoint& p = *(it - 1);
  return {p.uplink_mbps, p.rtt_ms};
}

}  // namespace

std::vector<TracePoint> ParseTrace(std::string_view csv_text) {
  std::vector<TracePoint> out;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= csv_text.size()) {
    auto next = csv_text.find('\n', pos);
    if (next == std::string_view::npos) next = csv_text.size();
    const std::string line = Trim(csv_text.substr(pos, next - pos));
    pos = next + 1;
    ++line_no;
    if (line.empty()) continue;
    if (out.empty() && line == kTraceCsvHeader) continue;

    const std::string where = "trace line " + std::to_string(line_no);
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(Trim(field));
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() != 3) throw ConfigError(where + ": expected 3 fields");

    TracePoint point;
    auto [p, ec] = std::from_chars(
        fields[0].data(), fields[0].data() + fields[0].size(), point.t_ms);
    if (fields[0].empty() || ec != std::errc() ||
        p != fields[0].data() + fields[0].size() || point.t_ms < 0) {
      throw ConfigError(where + ": bad timestamp '" + fields[0] + "'");
    }
    point.uplink_mbps = ParseDouble(fields[1], where);
    point.rtt_ms = ParseDouble(fields[2], where);
    if (!(point.uplink_mbps > 0.0)) {
      throw ConfigError(where + ": uplink_mbps must be positive");
    }
    if (!(point.rtt_ms >= 0.0)) {
      throw ConfigError(where + ": rtt_ms must be non-negative");
    }
    if (!out.empty() && point.t_ms <= out.back().t_ms) {
      throw ConfigError(where + ": timestamps must be strictly increasing");
    }
    out.push_back(point);
  }
  if (out.empty()) throw ConfigError("trace has no data rows");
  return out;
}

std::vector<TracePoint> LoadTrace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseTrace(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string_view ModeName(Mode mode) {
  return mode == Mode::kEstimate ? "estimate" : "oracle";
}

Mode ParseMode(std::string_view name) {
  if (name == "oracle") return Mode::kOracle;
  if (name == "estimate") return Mode::kEstimate;
  throw ConfigError("unknown mode '" + std::string(name) + "'");
}

HardwareProfile CostHardware(const Config& config,
                             const SimulationOptions& options) {
  if (options.cost_hardware_id) return config.Hardware(*options.cost_hardware_id);
  for (const auto& hw : config.hardware) {
    if (hw.location == Location::kCloud) return hw;
  }
  return {"none", Location::kCloud, 0.0, std::nullopt};
}

SimulationRun RunSimulation(const Config& config,
                            std::span<const TracePoint> trace,
                            const SimulationOptions& options) {
  if (trace.empty()) throw ConfigError("trace is empty");
  if (options.tick_ms <= 0) throw ConfigError("tick_ms must be positive");

  std::map<std::string, ServiceContext> services;
  for (const auto& spec : config.services) {
    ServiceContext ctx;
    ctx.spec = &spec;
    ctx.local_accuracy = config.Model(spec.local_option.model_id).accuracy;
    ctx.options[spec.local_option.Id()] = spec.local_option;
    for (const auto& option : spec.remote_options) {
      ctx.options[option.Id()] = option;
    }
    services[spec.name] = std::move(ctx);
  }

  SimulationRun run;
  const std::int64_t start = trace.front().t_ms;
  const std::int64_t end = trace.back().t_ms;
  NetworkConditions previous{};
  for (std::int64_t t = start; t <= end; t += options.tick_ms) {
    const NetworkConditions actual = ConditionsAt(trace, t);
    const bool lagged = options.mode == Mode::kEstimate && !run.ticks.empty();
    const NetworkConditions planned = lagged ? previous : actual;
    previous = actual;

    const AllocationResult allocation = Solve(
        BuildProblem(config, planned.rtt_ms, planned.uplink_mbps),
        options.solver);
    // Grants planned against a larger uplink are squeezed proportionally.
    double share = 1.0;
    if (allocation.total_bandwidth_mbps > actual.uplink_mbps) {
      share = actual.uplink_mbps / allocation.total_bandwidth_mbps;
    }

    TickRecord tick;
    tick.t_ms = t;
    tick.conditions = actual;
    for (const auto& [name, grant] : allocation.grants) {
      const ServiceContext& ctx = services.at(name);
      ServiceTick st;
      st.service = name;
      st.option_id = grant.option_id;
      st.granted_mbps = grant.bandwidth_mbps;
      st.utility = grant.utility;
      const ModelOption& option = ctx.options.at(grant.option_id);
      const HardwareProfile& hw = config.Hardware(option.hardware_id);
      if (hw.location == Location::kCloud) {
        const ModelProfile& model = config.Model(option.model_id);
        st.bits = PayloadBits(model);
        const LatencyBreakdown latency = CloudLatency(
            static_cast<double>(st.bits), grant.bandwidth_mbps * share,
            actual.rtt_ms, ExecTimeMs(model, hw.id));
        st.slo_met = MeetsSlo(latency.total_ms, ctx.spec->slo_ms);
        if (!st.slo_met) {
          st.fell_back = true;
          st.utility = ctx.local_accuracy;
        }
      }
      tick.total_utility += st.utility;
      tick.bits_transmitted += st.bits;
      tick.services.push_back(std::move(st));
    }
    run.ticks.push_back(std::move(tick));
  }

  SimulationSummary& s = run.summary;
  s.ticks = run.ticks.size();
  s.duration_ms = static_cast<std::int64_t>(s.ticks) * options.tick_ms;
  s.hours = static_cast<double>(s.duration_ms) / 3.6e6;
  s.min_total_utility = std::numeric_limits<double>::infinity();
  double utility_sum = 0.0;
  for (const auto& tick : run.ticks) {
    utility_sum += tick.total_utility;
    s.min_total_utility = std::min(s.min_total_utility, tick.total_utility);
    s.total_bits += tick.bits_transmitted;
    for (const auto& st : tick.services) {
      s.fallback_count += st.fell_back ? 1 : 0;
      s.slo_miss_count += st.slo_met ? 0 : 1;
    }
  }
  s.mean_total_utility = utility_sum / static_cast<double>(s.ticks);
  const HardwareProfile hw = CostHardware(config, options);
  s.cost_hardware_id = hw.id;
  s.cost = SimulateCost(static_cast<double>(s.total_bits), s.hours,
                        config.economics, hw);
  return run;
}

std::string TickCsvRows(const std::vector<TickRecord>& ticks) {
  std::string out;
  for (const auto& tick : ticks) {
    for (const auto& st : tick.services) {
      out += std::to_string(tick.t_ms) + "," + st.service + "," + st.option_id +
             "," + Fixed(st.granted_mbps, kMbpsPlaces) + "," +
             Fixed(st.utility, kUtilityPlaces) + "," +
             (st.slo_met ? "true" : "false") + "," +
             (st.fell_back ? "true" : "false") + "\n";
    }
  }
  return out;
}

std::string SummaryJson(const SimulationSummary& s) {
  nlohmann::ordered_json j;
  j["ticks"] = s.ticks;
  j["duration_ms"] = s.duration_ms;
  j["mean_total_utility"] = RoundTo(s.mean_total_utility, kUtilityPlaces);
  j["min_total_utility"] = RoundTo(s.min_total_utility, kUtilityPlaces);
  j["fallback_count"] = s.fallback_count;
  j["slo_miss_count"] = s.slo_miss_count;
  j["total_bits"] = s.total_bits;
  j["cost"] = {
      {"hardware_id", s.cost_hardware_id},
      {"network_usd_per_hour", RoundTo(s.cost.network_usd_per_hour, kUsdPlaces)},
      {"compute_usd_per_hour", RoundTo(s.cost.compute_usd_per_hour, kUsdPlaces)},
      {"total_usd_per_hour", RoundTo(s.cost.total_usd_per_hour, kUsdPlaces)},
      {"data_gb_per_hour", RoundTo(s.cost.data_gb_per_hour, 3)}};
  return j.dump(2) + "\n";
}

}  // namespace offload
