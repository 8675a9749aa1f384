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

#include "offload/allocation.h"

#include <gtest/gtest.h>

#include <random>

#include "json.hpp"
#include "test_util.h"

namespace offload {
namespace {

using testing::RandomProblem;

UtilityCurve DetectionCurve(double step1, double step2) {
  return UtilityCurve({{0.0, 40.2, "ED1"}, {step1, 47.2, "ED3"},
                       {step2, 51.2, "ED5"}});
}

struct Enumerated {
  double utility = -1.0;
  double bandwidth = 0.0;
  std::vector<std::size_t> index;
};

// Plain nested enumeration for two services, written against the curves
// directly rather than the library's shared ordering helpers.
Enumerated BestOfTwo(const UtilityCurve& a, const UtilityCurve& b,
                     double budget) {
  Enumerated best;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double bw = a[i].bandwidth_mbps + b[j].bandwidth_mbps;
      const double u = a[i].utility + b[j].utility;
      if (bw > budget) continue;
      if (u > best.utility || (u == best.utility && bw < best.bandwidth)) {
        best = {u, bw, {i, j}};
      }
    }
  }
  return best;
}

TEST(SolveExact, TwoServiceExample) {
  AllocationProblem p;
  p.services = {{"a", DetectionCurve(50, 120)}, {"b", DetectionCurve(50, 120)}};
  p.budget_mbps = 170;
  const Enumerated oracle =
      BestOfTwo(p.services[0].curve, p.services[1].curve, 170);
  EXPECT_DOUBLE_EQ(oracle.utility, 98.4);

  const AllocationResult r = SolveExact(p);
  EXPECT_DOUBLE_EQ(r.total_utility, 98.4);
  EXPECT_TRUE(r.optimal);
  EXPECT_DOUBLE_EQ(r.total_bandwidth_mbps, 170);
  // Tie between (ED5, ED3) and (ED3, ED5) broken by option id order.
  EXPECT_EQ(r.grants.at("a").option_id, "ED3");
  EXPECT_EQ(r.grants.at("a").bandwidth_mbps, 50);
  EXPECT_EQ(r.grants.at("b").option_id, "ED5");
  EXPECT_EQ(r.grants.at("b").bandwidth_mbps, 120);
}

TEST(SolveExact, BudgetZeroIsAllLocal) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    AllocationProblem p = RandomProblem(rng, 5, 4);
    p.budget_mbps = 0;
    for (Solver solver : {Solver::kExact, Solver::kGreedy, Solver::kMaxMin,
                          Solver::kBruteForce}) {
      const AllocationResult r = Solve(p, solver);
      EXPECT_EQ(r.total_bandwidth_mbps, 0.0);
      for (const auto& [name, grant] : r.grants) {
        EXPECT_EQ(grant.breakpoint_index, 0u);
      }
      EXPECT_DOUBLE_EQ(r.total_utility, AllLocalUtility(p));
    }
  }
}

TEST(SolveExact, SingleServiceTakesTopAffordableStep) {
  AllocationProblem p;
  p.services = {{"det", DetectionCurve(49.66, 120.12)}};
  p.budget_mbps = 200;
  const AllocationResult r = SolveExact(p);
  EXPECT_EQ(r.grants.at("det").bandwidth_mbps, 120.12);
  EXPECT_EQ(r.grants.at("det").utility, 51.2);
  p.budget_mbps = 120.11;
  EXPECT_EQ(SolveExact(p).grants.at("det").bandwidth_mbps, 49.66);
}

TEST(SolveExact, CapsAndPins) {
  AllocationProblem p;
  p.services = {{"a", DetectionCurve(50, 120)}, {"b", DetectionCurve(50, 120)}};
  p.budget_mbps = 1000;
  p.per_service_cap_mbps = {{"a", 0.0}, {"b", 60.0}};
  const AllocationResult r = SolveExact(p);
  EXPECT_EQ(r.grants.at("a").option_id, "ED1");
  EXPECT_EQ(r.grants.at("b").option_id, "ED3");

  p.per_service_cap_mbps = {{"ghost", 1.0}};
  EXPECT_THROW(SolveExact(p), std::invalid_argument);
  p.per_service_cap_mbps = {{"a", -1.0}};
  EXPECT_THROW(SolveExact(p), std::invalid_argument);
  p.per_service_cap_mbps.clear();
  p.services.push_back(p.services[0]);
  EXPECT_THROW(SolveExact(p), std::invalid_argument);
}

TEST(SolveGreedy, BoundedByExactOnExample) {
  AllocationProblem p;
  p.services = {{"a", DetectionCurve(50, 120)}, {"b", DetectionCurve(50, 120)}};
  p.budget_mbps = 170;
  const AllocationResult g = SolveGreedy(p);
  EXPECT_FALSE(g.optimal);
  EXPECT_LE(g.total_utility, 98.4);
  EXPECT_LE(g.total_bandwidth_mbps, 170);
}

TEST(SolveGreedy, OptimalForOneService) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 2000; ++i) {
    AllocationProblem p = RandomProblem(rng, 1, 6);
    const AllocationResult g = SolveGreedy(p);
    const AllocationResult e = BruteForceOracle(p);
    EXPECT_EQ(g.grants, e.grants) << "instance " << i;
  }
}

TEST(SolveMaxMin, TwoIdenticalServices) {
  AllocationProblem p;
  const UtilityCurve curve({{0.0, 40.0, "local"}, {100.0, 50.0, "cloud"}});
  p.services = {{"a", curve}, {"b", curve}};
  p.budget_mbps = 100;
  const AllocationResult r = SolveMaxMin(p);
  EXPECT_TRUE(r.optimal);
  // Enumerated: (40,40) bw 0, (50,40), (40,50) bw 100, (50,50) bw 200 (over).
  // Min is 40 in every feasible option; the second coordinate picks one
  // upgrade. Option ids break the (a, b) symmetry: "cloud" < "local".
  EXPECT_EQ(r.grants.at("a").utility, 50.0);
  EXPECT_EQ(r.grants.at("b").utility, 40.0);
  EXPECT_EQ(r.total_bandwidth_mbps, 100.0);
}

TEST(SolveMaxMin, UnchangeableMinimumStillUpgradesOthers) {
  AllocationProblem p;
  p.services = {
      {"low", UtilityCurve({{0.0, 10.0, "l0"}, {200.0, 20.0, "l1"}})},
      {"high", UtilityCurve({{0.0, 90.0, "h0"}, {50.0, 95.0, "h1"}})}};
  p.budget_mbps = 50;
  const AllocationResult r = SolveMaxMin(p);
  EXPECT_EQ(r.grants.at("low").utility, 10.0);
  EXPECT_EQ(r.grants.at("high").utility, 95.0);
}

TEST(SolveMaxMin, RaisesMinimumBeforeTotal) {
  AllocationProblem p;
  p.services = {
      {"a", UtilityCurve({{0.0, 10.0, "a0"}, {50.0, 30.0, "a1"}})},
      {"b", UtilityCurve({{0.0, 20.0, "b0"}, {50.0, 80.0, "b1"}})}};
  p.budget_mbps = 50;
  // Utility max takes b (total 90); max-min lifts a's 10 (min 20).
  EXPECT_EQ(SolveExact(p).grants.at("b").option_id, "b1");
  const AllocationResult r = SolveMaxMin(p);
  EXPECT_EQ(r.grants.at("a").option_id, "a1");
  EXPECT_EQ(r.grants.at("b").option_id, "b0");
}

TEST(BruteForceOracle, InstanceTooLarge) {
  AllocationProblem p;
  const UtilityCurve curve(
      {{0.0, 1.0, "x"}, {1.0, 2.0, "y"}, {2.0, 3.0, "z"}, {3.0, 4.0, "w"}});
  for (int i = 0; i < 10; ++i) p.services.push_back({"s" + std::to_string(i), curve});
  p.budget_mbps = 10;  // 4^10 > 1e6
  EXPECT_THROW(BruteForceOracle(p), InstanceTooLarge);
  EXPECT_THROW(SolveMaxMin(p), InstanceTooLarge);
  EXPECT_NO_THROW(SolveExact(p));
}

TEST(BruteForceOracle, UnconstrainedBudgetTakesEveryTop) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    AllocationProblem p = RandomProblem(rng, 5, 4);
    double total = 0.0;
    for (const auto& s : p.services) total += s.curve.breakpoints().back().bandwidth_mbps;
    p.budget_mbps = total * 2;
    const AllocationResult r = BruteForceOracle(p);
    for (const auto& s : p.services) {
      EXPECT_EQ(r.grants.at(s.name).breakpoint_index, s.curve.size() - 1);
    }
  }
}

TEST(AllocationProperties, OracleEquivalenceFloorAndGreedyBound) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    const AllocationProblem p = RandomProblem(rng, 5, 4);
    const AllocationResult exact = SolveExact(p);
    const AllocationResult oracle = BruteForceOracle(p);
    ASSERT_EQ(exact.total_utility, oracle.total_utility) << "instance " << i;
    ASSERT_EQ(exact.grants, oracle.grants) << "instance " << i;
    const double floor = AllLocalUtility(p);
    for (const auto& r : {exact, SolveGreedy(p), SolveMaxMin(p)}) {
      EXPECT_GE(r.total_utility, floor);
      EXPECT_LE(r.total_bandwidth_mbps, p.budget_mbps);
      double sum = 0.0;
      for (const auto& s : p.services) {
        const Grant& g = r.grants.at(s.name);
        EXPECT_EQ(s.curve[g.breakpoint_index].bandwidth_mbps, g.bandwidth_mbps);
        EXPECT_EQ(s.curve.ValueAt(g.bandwidth_mbps), g.utility);
      }
      for (const auto& [name, g] : r.grants) sum += g.utility;
      EXPECT_DOUBLE_EQ(sum, r.total_utility);
    }
    EXPECT_LE(SolveGreedy(p).total_utility, exact.total_utility);
  }
}

TEST(AllocationProperties, MonotoneInBudget) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    AllocationProblem p = RandomProblem(rng, 5, 4);
    const double top = p.budget_mbps * 1.5 + 1.0;
    double previous = -1.0;
    for (int k = 0; k <= 20; ++k) {
      p.budget_mbps = top * k / 20.0;
      const double total = SolveExact(p).total_utility;
      EXPECT_GE(total, previous);
      previous = total;
    }
  }
}

TEST(AllocationProperties, ScaleInvariance) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 300; ++i) {
    const AllocationProblem p = RandomProblem(rng, 5, 4);
    const AllocationResult base = SolveExact(p);
    for (double factor : {0.25, 2.0, 8.0}) {  // powers of two scale exactly
      AllocationProblem scaled = p;
      scaled.budget_mbps *= factor;
      for (auto& s : scaled.services) {
        std::vector<Breakpoint> bps = s.curve.breakpoints();
        for (auto& bp : bps) bp.bandwidth_mbps *= factor;
        s.curve = UtilityCurve(std::move(bps));
      }
      const AllocationResult r = SolveExact(scaled);
      for (const auto& [name, grant] : base.grants) {
        EXPECT_EQ(r.grants.at(name).option_id, grant.option_id);
      }
    }
  }
}

TEST(AllocationJson, MirrorsResultFields) {
  AllocationProblem p;
  p.services = {{"a", DetectionCurve(49.6587, 120)}};
  p.budget_mbps = 100;
  const auto j = nlohmann::json::parse(AllocationJson(SolveExact(p), "exact"));
  EXPECT_EQ(j["solver"], "exact");
  EXPECT_EQ(j["grants"]["a"]["bandwidth_mbps"], 49.66);
  EXPECT_EQ(j["grants"]["a"]["utility"], 47.2);
  EXPECT_EQ(j["grants"]["a"]["option_id"], "ED3");
  EXPECT_EQ(j["total_utility"], 47.2);
  EXPECT_EQ(j["unallocated_mbps"], 50.34);
  EXPECT_EQ(j["optimal"], true);
}

TEST(Solver, Names) {
  for (Solver s : {Solver::kExact, Solver::kGreedy, Solver::kMaxMin,
                   Solver::kBruteForce}) {
    EXPECT_EQ(ParseSolver(SolverName(s)), s);
  }
  EXPECT_THROW(ParseSolver("gurobi"), ConfigError);
}

}  // namespace
}  // namespace offload
