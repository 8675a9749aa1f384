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

#ifndef OFFLOAD_ALLOCATION_H_
#define OFFLOAD_ALLOCATION_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "offload/profiles.h"
#include "offload/utility.h"

namespace offload {

class InstanceTooLarge : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

// Largest breakpoint-combination count the enumerating solvers accept.
inline constexpr std::uint64_t kMaxEnumeratedCombinations = 1'000'000;

struct ServiceCurveEntry {
  std::string name;
  UtilityCurve curve;
};

struct AllocationProblem {
  std::vector<ServiceCurveEntry> services;
  double budget_mbps = 0.0;
  // A cap of 0 pins the service to its local option.
  std::map<std::string, double> per_service_cap_mbps;
};

struct Grant {
  double bandwidth_mbps = 0.0;
  double utility = 0.0;
  std::string option_id;
  std::size_t breakpoint_index = 0;

  bool operator==(const Grant&) const = default;
};

struct AllocationResult {
  std::map<std::string, Grant> grants;
  double total_utility = 0.0;
  double total_bandwidth_mbps = 0.0;
  double budget_mbps = 0.0;
  bool optimal = false;
};

enum class Solver { kExact, kGreedy, kMaxMin, kBruteForce };

std::string_view SolverName(Solver solver);
Solver ParseSolver(std::string_view name);  // throws ConfigError

// Problem over the service curves of every service in `config` at `rtt_ms`.
AllocationProblem BuildProblem(const Config& config, double rtt_ms,
                               double budget_mbps);

// Normalized instance shared by all solvers: services sorted by name, each
// restricted to the breakpoints its cap admits. All totals are accumulated
// in this service order so every solver sees bit-identical sums.
struct PreparedProblem {
  std::vector<std::string> names;
  std::vector<std::vector<Breakpoint>> choices;
  double budget_mbps = 0.0;

  std::uint64_t CombinationCount() const;  // saturates at UINT64_MAX
};

struct Selection {
  std::vector<std::size_t> index;  // one breakpoint per service
  double total_utility = 0.0;
  double total_bandwidth_mbps = 0.0;
};

// Throws std::invalid_argument on duplicate names, negative budget or caps.
PreparedProblem Prepare(const AllocationProblem& problem);
Selection Evaluate(const PreparedProblem& prepared,
                   std::vector<std::size_t> index);
bool Feasible(const PreparedProblem& prepared, const Selection& selection);

// Strict total order used for tie-breaking by the utility-maximizing
// solvers: higher utility, then lower bandwidth, then lexicographically
// smaller option ids in service order, then smaller breakpoint indices.
bool BetterByUtility(const PreparedProblem& prepared, const Selection& a,
                     const Selection& b);

// Max-min order: lexicographically larger ascending-sorted utility vector,
// then the same bandwidth/id/index tie-breaks.
bool BetterByMaxMin(const PreparedProblem& prepared, const Selection& a,
                    const Selection& b);

AllocationResult ToResult(const PreparedProblem& prepared,
                          const Selection& selection, bool optimal);

// Utility-maximal multiple-choice knapsack via depth-first branch and bound.
AllocationResult SolveExact(const AllocationProblem& problem);

// Ratio-greedy upgrades from all-local. Not optimal in general.
AllocationResult SolveGreedy(const AllocationProblem& problem);

// Lexicographic (unweighted) max-min by enumeration. Throws InstanceTooLarge
// above kMaxEnumeratedCombinations.
AllocationResult SolveMaxMin(const AllocationProblem& problem);

// Exhaustive enumeration under the SolveExact ordering. Serial reference;
// see kernels.h for the parallel variant. Throws InstanceTooLarge.
AllocationResult BruteForceOracle(const AllocationProblem& problem);

AllocationResult Solve(const AllocationProblem& problem, Solver solver);

// Sum of every service's bandwidth-0 utility.
double AllLocalUtility(const AllocationProblem& problem);

// JSON report mirroring AllocationResult.
std::string AllocationJson(const AllocationResult& result,
                           std::string_view solver);

}  // namespace offload

#endif  // OFFLOAD_ALLOCATION_H_
