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

#ifndef OFFLOAD_SIMULATOR_H_
#define OFFLOAD_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "offload/allocation.h"
#include "offload/cost.h"
#include "offload/profiles.h"

namespace offload {

struct TracePoint {
  std::int64_t t_ms = 0;
  double uplink_mbps = 0.0;
  double rtt_ms = 0.0;

  bool operator==(const TracePoint&) const = default;
};

inline constexpr const char* kTraceCsvHeader = "t_ms,uplink_mbps,rtt_ms";

// Accepts an optional header line. Throws ConfigError with the line number
// on malformed rows, non-increasing timestamps or an empty trace.
std::vector<TracePoint> ParseTrace(std::string_view csv_text);
std::vector<TracePoint> LoadTrace(const std::string& path);

// Oracle allocates on the tick's true conditions. Estimate allocates on the
// previous tick's conditions and is scored against the current ones.
enum class Mode { kOracle, kEstimate };

std::string_view ModeName(Mode mode);
Mode ParseMode(std::string_view name);  // throws ConfigError

struct SimulationOptions {
  Solver solver = Solver::kExact;
  Mode mode = Mode::kOracle;
  std::int64_t tick_ms = 100;
  // Hardware whose hourly rate is charged; defaults to the first Cloud
  // hardware in the configuration.
  std::optional<std::string> cost_hardware_id;
};

struct ServiceTick {
  std::string service;
  std::string option_id;
  double granted_mbps = 0.0;
  double utility = 0.0;
  bool slo_met = true;
  bool fell_back = false;
  std::int64_t bits = 0;
};

struct TickRecord {
  std::int64_t t_ms = 0;
  NetworkConditions conditions;
  std::vector<ServiceTick> services;  // sorted by service name
  double total_utility = 0.0;
  std::int64_t bits_transmitted = 0;
};

struct SimulationSummary {
  std::size_t ticks = 0;
  std::int64_t duration_ms = 0;
  double hours = 0.0;
  double mean_total_utility = 0.0;
  double min_total_utility = 0.0;
  std::size_t fallback_count = 0;
  std::size_t slo_miss_count = 0;
  std::int64_t total_bits = 0;
  std::string cost_hardware_id;
  CostBreakdown cost;
};

struct SimulationRun {
  std::vector<TickRecord> ticks;
  SimulationSummary summary;
};

// Replays `trace` at `tick_ms` cadence with sample-and-hold conditions,
// one request per service per tick. Deterministic.
SimulationRun RunSimulation(const Config& config,
                            std::span<const TracePoint> trace,
                            const SimulationOptions& options);

// Hardware charged for compute in the summary cost.
HardwareProfile CostHardware(const Config& config,
                             const SimulationOptions& options);

inline constexpr const char* kTickCsvHeader =
    "t_ms,service,option_id,granted_mbps,utility,slo_met,fell_back";
std::string TickCsvRows(const std::vector<TickRecord>& ticks);
std::string SummaryJson(const SimulationSummary& summary);

}  // namespace offload

#endif  // OFFLOAD_SIMULATOR_H_
