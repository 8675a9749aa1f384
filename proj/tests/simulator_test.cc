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

#include <gtest/gtest.h>

#include "json.hpp"
#include "test_util.h"

namespace offload {
namespace {

using testing::DataPath;
using testing::Table1Config;

// Detection service restricted to ED1 local / ED3 cloud:
// curve {(0, 40.2), (49.66, 47.2)}.
Config SingleStepConfig() {
  Config config = Table1Config();
  config.services[0].remote_options = {{"ED3", "H100"}};
  return config;
}

std::vector<TracePoint> Fixture(const std::string& name) {
  return LoadTrace(DataPath("traces/" + name));
}

TEST(ParseTrace, ThreeLines) {
  const auto trace = ParseTrace("0,200,12\n100,150,14\n200,180,12\n");
  ASSERT_EQ(trace.size(), 3u);
  EXPECT_EQ(trace[1], (TracePoint{100, 150.0, 14.0}));
}

TEST(ParseTrace, HeaderAndBlankLines) {
  const auto trace = ParseTrace("t_ms,uplink_mbps,rtt_ms\r\n0,200,12\r\n\n");
  EXPECT_EQ(trace.size(), 1u);
}

TEST(ParseTrace, ErrorsNameTheLine) {
  auto message = [](const std::string& text) -> std::string {
    try {
      ParseTrace(text);
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message("0,200,12\n100,150,14\n100,180,12\n").find("line 3"),
            std::string::npos);
  EXPECT_NE(message("0,200,12\n50,0,14\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("0,200\n").find("line 1"), std::string::npos);
  EXPECT_NE(message("0,abc,12\n").find("bad number"), std::string::npos);
  EXPECT_NE(message("-5,200,12\n").find("bad timestamp"), std::string::npos);
  EXPECT_NE(message("0,200,-1\n").find("rtt_ms"), std::string::npos);
  EXPECT_NE(message("").find("no data rows"), std::string::npos);
  EXPECT_NE(message("t_ms,uplink_mbps,rtt_ms\n").find("no data rows"),
            std::string::npos);
}

TEST(LoadTrace, DriveFixtureStatistics) {
  const auto trace = Fixture("drive_5g.csv");
  ASSERT_EQ(trace.size(), 600u);
  double sum_up = 0.0, sum_rtt = 0.0;
  for (const auto& p : trace) {
    EXPECT_GE(p.uplink_mbps, 100.0);
    EXPECT_LE(p.uplink_mbps, 200.0);
    EXPECT_GE(p.rtt_ms, 8.0);
    EXPECT_LE(p.rtt_ms, 16.0);
    sum_up += p.uplink_mbps;
    sum_rtt += p.rtt_ms;
  }
  EXPECT_NEAR(sum_up / 600, 155.17, 0.01);
  EXPECT_NEAR(sum_rtt / 600, 12.63, 0.01);
  EXPECT_THROW(LoadTrace("/nonexistent.csv"), ConfigError);
}

TEST(RunSimulation, SquareWaveAlternates) {
  const Config config = SingleStepConfig();
  const auto run = RunSimulation(config, Fixture("square_wave.csv"), {});
  ASSERT_EQ(run.ticks.size(), 20u);
  for (std::size_t i = 0; i < run.ticks.size(); ++i) {
    EXPECT_EQ(run.ticks[i].total_utility, i % 2 == 0 ? 40.2 : 47.2) << i;
  }
  EXPECT_EQ(run.summary.fallback_count, 0u);
  EXPECT_EQ(run.summary.slo_miss_count, 0u);
}

TEST(RunSimulation, ConstantTraceMatchesOneShotSolve) {
  const Config config = Table1Config();
  const auto run = RunSimulation(config, Fixture("constant.csv"), {});
  const AllocationResult once = SolveExact(BuildProblem(config, 12.0, 200.0));
  for (const auto& tick : run.ticks) {
    ASSERT_EQ(tick.services.size(), 1u);
    EXPECT_EQ(tick.services[0].option_id, once.grants.at("detection").option_id);
    EXPECT_EQ(tick.services[0].granted_mbps,
              once.grants.at("detection").bandwidth_mbps);
    EXPECT_EQ(tick.total_utility, once.total_utility);
  }
  EXPECT_EQ(run.summary.fallback_count, 0u);
}

TEST(RunSimulation, StepDownEstimateFallsBackOnce) {
  // Hand trace: ticks 0-4 at 60 Mbps grant ED3 (49.66 Mbps). Tick 5 still
  // plans on 60 but realizes 10 Mbps: 4,816,896 bits / 10 Mbps = 481.7 ms
  // transmit, SLO missed, scored at the local 40.2. Ticks 6-9 plan on 10.
  const Config config = SingleStepConfig();
  SimulationOptions options;
  options.mode = Mode::kEstimate;
  const auto run = RunSimulation(config, Fixture("step_down.csv"), options);
  ASSERT_EQ(run.ticks.size(), 10u);
  EXPECT_EQ(run.summary.fallback_count, 1u);
  const ServiceTick& st = run.ticks[5].services[0];
  EXPECT_TRUE(st.fell_back);
  EXPECT_FALSE(st.slo_met);
  EXPECT_EQ(st.utility, 40.2);
  EXPECT_EQ(run.ticks[4].total_utility, 47.2);
  EXPECT_EQ(run.ticks[6].services[0].option_id, "ED1@Orin");

  options.mode = Mode::kOracle;
  EXPECT_EQ(RunSimulation(config, Fixture("step_down.csv"), options)
                .summary.fallback_count,
            0u);
}

TEST(RunSimulation, InvariantsAcrossFixtures) {
  const Config config = LoadConfig(DataPath("two_service.json"));
  for (const char* name :
       {"square_wave.csv", "step_down.csv", "constant.csv", "drive_5g.csv"}) {
    const auto trace = Fixture(name);
    double floor = 0.0;
    for (const auto& s : config.services) {
      floor += config.Model(s.local_option.model_id).accuracy;
    }
    SimulationOptions oracle;
    SimulationOptions greedy;
    greedy.solver = Solver::kGreedy;
    const auto exact_run = RunSimulation(config, trace, oracle);
    const auto greedy_run = RunSimulation(config, trace, greedy);
    EXPECT_EQ(exact_run.summary.fallback_count, 0u) << name;
    EXPECT_EQ(greedy_run.summary.fallback_count, 0u) << name;
    for (std::size_t i = 0; i < exact_run.ticks.size(); ++i) {
      EXPECT_GE(exact_run.ticks[i].total_utility,
                greedy_run.ticks[i].total_utility);
      EXPECT_GE(greedy_run.ticks[i].total_utility, floor - 1e-9);
    }

    for (Mode mode : {Mode::kOracle, Mode::kEstimate}) {
      SimulationOptions options;
      options.mode = mode;
      const auto run = RunSimulation(config, trace, options);
      std::int64_t bits = 0;
      std::size_t fallbacks = 0;
      for (const auto& tick : run.ticks) {
        bits += tick.bits_transmitted;
        EXPECT_GE(tick.total_utility, floor - 1e-9);
        for (const auto& st : tick.services) {
          fallbacks += st.fell_back;
          if (st.fell_back) {
            EXPECT_EQ(st.utility, config.Model("ED1").accuracy);
          }
        }
      }
      EXPECT_EQ(run.summary.total_bits, bits);
      EXPECT_EQ(run.summary.fallback_count, fallbacks);
      const CostBreakdown expected = SimulateCost(
          static_cast<double>(bits), run.summary.hours, config.economics,
          config.Hardware("H100"));
      EXPECT_NEAR(run.summary.cost.total_usd_per_hour,
                  expected.total_usd_per_hour,
                  1e-9 * expected.total_usd_per_hour);
    }
  }
}

TEST(RunSimulation, TickCadence) {
  const Config config = SingleStepConfig();
  SimulationOptions options;
  options.tick_ms = 250;
  const auto run = RunSimulation(config, Fixture("square_wave.csv"), options);
  // Ticks at 0, 250, ..., 1750; t=250 holds the t=200 sample (10 Mbps) and
  // t=500 the t=500 sample (60 Mbps).
  ASSERT_EQ(run.ticks.size(), 8u);
  EXPECT_EQ(run.ticks[1].conditions.uplink_mbps, 10.0);
  EXPECT_EQ(run.ticks[2].conditions.uplink_mbps, 60.0);
  EXPECT_EQ(run.summary.duration_ms, 2000);
  options.tick_ms = 0;
  EXPECT_THROW(RunSimulation(config, Fixture("square_wave.csv"), options),
               ConfigError);
  EXPECT_THROW(RunSimulation(config, {}, {}), ConfigError);
}

TEST(SimulationOutput, CsvAndJson) {
  const Config config = SingleStepConfig();
  const auto run = RunSimulation(config, ParseTrace("0,60,12\n100,10,12\n"), {});
  EXPECT_EQ(TickCsvRows(run.ticks),
            "0,detection,ED3@H100,49.66,47.20,true,false\n"
            "100,detection,ED1@Orin,0.00,40.20,true,false\n");
  const auto j = nlohmann::json::parse(SummaryJson(run.summary));
  EXPECT_EQ(j["ticks"], 2);
  EXPECT_EQ(j["fallback_count"], 0);
  EXPECT_EQ(j["total_bits"], 4'816'896);
  EXPECT_EQ(j["min_total_utility"], 40.2);
  EXPECT_EQ(j["cost"]["hardware_id"], "H100");
}

TEST(Mode, Names) {
  EXPECT_EQ(ParseMode("oracle"), Mode::kOracle);
  EXPECT_EQ(ParseMode("estimate"), Mode::kEstimate);
  EXPECT_THROW(ParseMode("psychic"), ConfigError);
}

}  // namespace
}  // namespace offload
