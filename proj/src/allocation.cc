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

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "offload/format.h"

namespace offload {
namespace {

// Compares the tail of the ordering shared by both objectives.
bool BetterTieBreak(const PreparedProblem& prepared, const Selection& a,
                    const Selection& b) {
  if (a.total_bandwidth_mbps != b.total_bandwidth_mbps) {
    return a.total_bandwidth_mbps < b.total_bandwidth_mbps;
  }
  for (std::size_t s = 0; s < prepared.choices.size(); ++s) {
    const auto& ia = prepared.choices[s][a.index[s]].option_id;
    const auto& ib = prepared.choices[s][b.index[s]].option_id;
    if (ia != ib) return ia < ib;
  }
  return a.index < b.index;
}

std::vector<double> SortedUtilities(const PreparedProblem& prepared,
                                    const Selection& selection) {
  std::vector<double> u(selection.index.size());
  for (std::size_t s = 0; s < u.size(); ++s) {
    u[s] = prepared.choices[s][selection.index[s]].utility;
  }
  std::sort(u.begin(), u.end());
  return u;
}

Selection AllLocal(const PreparedProblem& prepared) {
  return Evaluate(prepared, std::vector<std::size_t>(prepared.names.size(), 0));
}

void CheckEnumerable(const PreparedProblem& prepared) {
  if (prepared.CombinationCount() > kMaxEnumeratedCombinations) {
    throw InstanceTooLarge("allocation instance has more than " +
                           std::to_string(kMaxEnumeratedCombinations) +
                           " breakpoint combinations");
  }
}

// Visits every combination in odometer order (last service fastest).
template <typename Visit>
void Enumerate(const PreparedProblem& prepared, Visit&& visit) {
  const std::size_t n = prepared.choices.size();
  std::vector<std::size_t> index(n, 0);
  while (true) {
    visit(index);
    std::size_t s = n;
    while (s > 0) {
      --s;
      if (++index[s] < prepared.choices[s].size()) break;
      index[s] = 0;
      if (s == 0) return;
    }
    if (n == 0) return;
  }
}

class BranchAndBound {
 public:
  explicit BranchAndBound(const PreparedProblem& prepared)
      : prepared_(prepared),
        best_(AllLocal(prepared)),
        index_(prepared.names.size(), 0) {}

  Selection Run() {
    Descend(0, 0.0, 0.0);
    return best_;
  }

 private:
  // Utility upper bound for services [from, n) with `remaining` bandwidth,
  // relaxing the shared budget to a per-service one.
  double Bound(std::size_t from, double remaining) const {
    double bound = 0.0;
    for (std::size_t s = from; s < prepared_.choices.size(); ++s) {
      const auto& bps = prepared_.choices[s];
      std::size_t j = bps.size();
      while (j > 1 && bps[j - 1].bandwidth_mbps > remaining) --j;
      bound += bps[j - 1].utility;
    }
    return bound;
  }

  void Descend(std::size_t s, double utility, double bandwidth) {
    const std::size_t n = prepared_.choices.size();
    if (s == n) {
      Selection candidate = Evaluate(prepared_, index_);
      if (Feasible(prepared_, candidate) &&
          BetterByUtility(prepared_, candidate, best_)) {
        best_ = std::move(candidate);
      }
      return;
    }
    const double remaining = prepared_.budget_mbps - bandwidth;
    // Equal-utility leaves must still be visited for tie-breaking, so only
    // prune bounds that fall clearly below the incumbent.
    const double slack = 1e-9 * std::max(1.0, std::abs(best_.total_utility));
    if (utility + Bound(s, remaining) < best_.total_utility - slack) return;

    const auto& bps = prepared_.choices[s];
    for (std::size_t j = bps.size(); j-- > 0;) {
      const double next_bandwidth = bandwidth + bps[j].bandwidth_mbps;
      if (next_bandwidth > prepared_.budget_mbps) continue;
      index_[s] = j;
      Descend(s + 1, utility + bps[j].utility, next_bandwidth);
    }
    index_[s] = 0;
  }

  const PreparedProblem& prepared_;
  Selection best_;
  std::vector<std::size_t> index_;
};

}  // namespace

std::string_view SolverName(Solver solver) {
  switch (solver) {
    case Solver::kExact:
      return "exact";
    case Solver::kGreedy:
      return "greedy";
    case Solver::kMaxMin:
      return "maxmin";
    case Solver::kBruteForce:
      return "bruteforce";
  }
  return "exact";
}

Solver ParseSolver(std::string_view name) {
  if (name == "exact") return Solver::kExact;
  if (name == "greedy") return Solver::kGreedy;
  if (name == "maxmin") return Solver::kMaxMin;
  if (name == "bruteforce") return Solver::kBruteForce;
  throw ConfigError("unknown solver '" + std::string(name) + "'");
}

AllocationProblem BuildProblem(const Config& config, double rtt_ms,
                               double budget_mbps) {
  AllocationProblem problem;
  problem.budget_mbps = budget_mbps;
  for (const auto& service : config.services) {
    problem.services.push_back(
        {service.name, ServiceCurve(config, service, rtt_ms)});
  }
  return problem;
}

std::uint64_t PreparedProblem::CombinationCount() const {
  std::uint64_t count = 1;
  for (const auto& c : choices) {
    if (count > std::numeric_limits<std::uint64_t>::max() / c.size()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= c.size();
  }
  return count;
}

PreparedProblem Prepare(const AllocationProblem& problem) {
  if (!(problem.budget_mbps >= 0.0)) {
    throw std::invalid_argument("budget must be non-negative");
  }
  std::vector<const ServiceCurveEntry*> order;
  std::set<std::string> names;
  for (const auto& entry : problem.services) {
    if (!names.insert(entry.name).second) {
      throw std::invalid_argument("duplicate service '" + entry.name + "'");
    }
    order.push_back(&entry);
  }
  for (const auto& [name, cap] : problem.per_service_cap_mbps) {
    if (!names.count(name)) {
      throw std::invalid_argument("cap for unknown service '" + name + "'");
    }
    if (!(cap >= 0.0)) {
      throw std::invalid_argument("cap for '" + name + "' must be >= 0");
    }
  }
  std::sort(order.begin(), order.end(),
            [](const auto* a, const auto* b) { return a->name < b->name; });

  PreparedProblem prepared;
  prepared.budget_mbps = problem.budget_mbps;
  for (const auto* entry : order) {
    prepared.names.push_back(entry->name);
    std::vector<Breakpoint> allowed = entry->curve.breakpoints();
    auto cap = problem.per_service_cap_mbps.find(entry->name);
    if (cap != problem.per_service_cap_mbps.end()) {
      // Breakpoint 0 always survives: bandwidth 0 <= any cap.
      std::erase_if(allowed, [&](const Breakpoint& bp) {
        return bp.bandwidth_mbps > cap->second;
      });
    }
    prepared.choices.push_back(std::move(allowed));
  }
  return prepared;
}

Selection Evaluate(const PreparedProblem& prepared,
                   std::vector<std::size_t> index) {
  Selection out;
  out.index = std::move(index);
  for (std::size_t s = 0; s < out.index.size(); ++s) {
    const Breakpoint& bp = prepared.choices[s][out.index[s]];
    out.total_utility += bp.utility;
    out.total_bandwidth_mbps += bp.bandwidth_mbps;
  }
  return out;
}

bool Feasible(const PreparedProblem& prepared, const Selection& selection) {
  return selection.total_bandwidth_mbps <= prepared.budget_mbps;
}

bool BetterByUtility(const PreparedProblem& prepared, const Selection& a,
                     const Selection& b) {
  if (a.total_utility != b.total_utility) {
    return a.total_utility > b.total_utility;
  }
  return BetterTieBreak(prepared, a, b);
}

bool BetterByMaxMin(const PreparedProblem& prepared, const Selection& a,
                    const Selection& b) {
  const auto ua = SortedUtilities(prepared, a);
  const auto ub = SortedUtilities(prepared, b);
  if (ua != ub) return ua > ub;
  return BetterTieBreak(prepared, a, b);
}

AllocationResult ToResult(const PreparedProblem& prepared,
                          const Selection& selection, bool optimal) {
  AllocationResult result;
  for (std::size_t s = 0; s < prepared.names.size(); ++s) {
    const Breakpoint& bp = prepared.choices[s][selection.index[s]];
    result.grants[prepared.names[s]] = {bp.bandwidth_mbps, bp.utility,
                                        bp.option_id, selection.index[s]};
  }
  result.total_utility = selection.total_utility;
  result.total_bandwidth_mbps = selection.total_bandwidth_mbps;
  result.budget_mbps = prepared.budget_mbps;
  result.optimal = optimal;
  return result;
}

AllocationResult SolveExact(const AllocationProblem& problem) {
  const PreparedProblem prepared = Prepare(problem);
  return ToResult(prepared, BranchAndBound(prepared).Run(), true);
}

AllocationResult SolveGreedy(const AllocationProblem& problem) {
  const PreparedProblem prepared = Prepare(problem);
  Selection current = AllLocal(prepared);
  while (true) {
    bool found = false;
    std::size_t best_s = 0, best_j = 0;
    double best_ratio = 0.0, best_delta_bw = 0.0;
    for (std::size_t s = 0; s < prepared.choices.size(); ++s) {
      const auto& bps = prepared.choices[s];
      const Breakpoint& from = bps[current.index[s]];
      for (std::size_t j = current.index[s] + 1; j < bps.size(); ++j) {
        const double delta_bw = bps[j].bandwidth_mbps - from.bandwidth_mbps;
        if (current.total_bandwidth_mbps + delta_bw > prepared.budget_mbps) {
          break;  // later breakpoints cost more
        }
        const double ratio = (bps[j].utility - from.utility) / delta_bw;
        // Ties: smaller bandwidth step, then earlier service, then lower j.
        if (!found || ratio > best_ratio ||
            (ratio == best_ratio && delta_bw < best_delta_bw)) {
          found = true;
          best_s = s;
          best_j = j;
          best_ratio = ratio;
          best_delta_bw = delta_bw;
        }
      }
    }
    if (!found) break;
    std::vector<std::size_t> next = current.index;
    next[best_s] = best_j;
    Selection candidate = Evaluate(prepared, std::move(next));
    // Re-summed in service order; refuse an upgrade that rounding pushed over.
    if (!Feasible(prepared, candidate)) break;
    current = std::move(candidate);
  }
  return ToResult(prepared, current, false);
}

AllocationResult SolveMaxMin(const AllocationProblem& problem) {
  const PreparedProblem prepared = Prepare(problem);
  CheckEnumerable(prepared);
  Selection best = AllLocal(prepared);
  Enumerate(prepared, [&](const std::vector<std::size_t>& index) {
    Selection candidate = Evaluate(prepared, index);
    if (Feasible(prepared, candidate) &&
        BetterByMaxMin(prepared, candidate, best)) {
      best = std::move(candidate);
    }
  });
  return ToResult(prepared, best, true);
}

AllocationResult BruteForceOracle(const AllocationProblem& problem) {
  const PreparedProblem prepared = Prepare(problem);
  CheckEnumerable(prepared);
  Selection best = AllLocal(prepared);
  Enumerate(prepared, [&](const std::vector<std::size_t>& index) {
    Selection candidate = Evaluate(prepared, index);
    if (Feasible(prepared, candidate) &&
        BetterByUtility(prepared, candidate, best)) {
      best = std::move(candidate);
    }
  });
  return ToResult(prepared, best, true);
}

AllocationResult Solve(const AllocationProblem& problem, Solver solver) {
  switch (solver) {
    case Solver::kExact:
      return SolveExact(problem);
    case Solver::kGreedy:
      return SolveGreedy(problem);
    case Solver::kMaxMin:
      return SolveMaxMin(problem);
    case Solver::kBruteForce:
      return BruteForceOracle(problem);
  }
  return SolveExact(problem);
}

double AllLocalUtility(const AllocationProblem& problem) {
  const PreparedProblem prepared = Prepare(problem);
  return AllLocal(prepared).total_utility;
}

std::string AllocationJson(const AllocationResult& result,
                           std::string_view solver) {
  nlohmann::ordered_json j;
  j["solver"] = solver;
  j["budget_mbps"] = RoundTo(result.budget_mbps, kMbpsPlaces);
  j["grants"] = nlohmann::ordered_json::object();
  for (const auto& [name, grant] : result.grants) {
    j["grants"][name] = {
        {"bandwidth_mbps", RoundTo(grant.bandwidth_mbps, kMbpsPlaces)},
        {"utility", RoundTo(grant.utility, kUtilityPlaces)},
        {"option_id", grant.option_id}};
  }
  j["total_utility"] = RoundTo(result.total_utility, kUtilityPlaces);
  j["total_bandwidth_mbps"] = RoundTo(result.total_bandwidth_mbps, kMbpsPlaces);
  j["unallocated_mbps"] =
      RoundTo(result.budget_mbps - result.total_bandwidth_mbps, kMbpsPlaces);
  j["optimal"] = result.optimal;
  return j.dump(2) + "\n";
}

}  // namespace offload
