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

#include "offload/kernels.h"

#include <omp.h>

#include <exception>
#include <optional>
#include <stdexcept>

namespace offload {
namespace serial {

void EvaluateCurve(const UtilityCurve& curve, std::span<const double> bandwidths,
                   std::span<double> out) {
  if (out.size() != bandwidths.size()) {
    throw std::invalid_argument("output span size mismatch");
  }
  for (std::size_t i = 0; i < bandwidths.size(); ++i) {
    out[i] = curve.ValueAt(bandwidths[i]);
  }
}

std::vector<SimulationRun> RunSweep(
    const Config& config, std::span<const std::vector<TracePoint>> traces,
    const SimulationOptions& options) {
  std::vector<SimulationRun> runs;
  runs.reserve(traces.size());
  for (const auto& trace : traces) {
    runs.push_back(RunSimulation(config, trace, options));
  }
  return runs;
}

}  // namespace serial

namespace parallel {

AllocationResult BruteForceOracle(const AllocationProblem& problem) {
  const PreparedProblem prepared = Prepare(problem);
  const std::uint64_t total = prepared.CombinationCount();
  if (total > kMaxEnumeratedCombinations) {
    throw InstanceTooLarge("allocation instance has more than " +
                           std::to_string(kMaxEnumeratedCombinations) +
                           " breakpoint combinations");
  }
  const std::size_t n = prepared.choices.size();
  const auto count = static_cast<std::int64_t>(total);

  std::vector<std::optional<Selection>> per_thread(omp_get_max_threads());
#pragma omp parallel
  {
    std::optional<Selection>& local = per_thread[omp_get_thread_num()];
    std::vector<std::size_t> index(n);
#pragma omp for schedule(static)
    for (std::int64_t k = 0; k < count; ++k) {
      // Mixed radix, last service fastest.
      auto rest = static_cast<std::uint64_t>(k);
      for (std::size_t s = n; s-- > 0;) {
        const std::size_t radix = prepared.choices[s].size();
        index[s] = rest % radix;
        rest /= radix;
      }
      Selection candidate = Evaluate(prepared, index);
      if (Feasible(prepared, candidate) &&
          (!local || BetterByUtility(prepared, candidate, *local))) {
        local = std::move(candidate);
      }
    }
  }

  // The all-local selection is always feasible, so some thread holds a best.
  std::optional<Selection> best;
  for (auto& local : per_thread) {
    if (local && (!best || BetterByUtility(prepared, *local, *best))) {
      best = std::move(local);
    }
  }
  return ToResult(prepared, *best, true);
}

void EvaluateCurve(const UtilityCurve& curve, std::span<const double> bandwidths,
                   std::span<double> out) {
  if (out.size() != bandwidths.size()) {
    throw std::invalid_argument("output span size mismatch");
  }
  const auto count = static_cast<std::int64_t>(bandwidths.size());
  bool negative = false;
#pragma omp parallel for schedule(static) reduction(|| : negative)
  for (std::int64_t i = 0; i < count; ++i) {
    if (bandwidths[i] < 0.0) {
      negative = true;
      out[i] = 0.0;
    } else {
      out[i] = curve.ValueAt(bandwidths[i]);
    }
  }
  if (negative) throw std::invalid_argument("bandwidth must be non-negative");
}

std::vector<SimulationRun> RunSweep(
    const Config& config, std::span<const std::vector<TracePoint>> traces,
    const SimulationOptions& options) {
  std::vector<SimulationRun> runs(traces.size());
  std::vector<std::exception_ptr> errors(traces.size());
  const auto count = static_cast<std::int64_t>(traces.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      runs[i] = RunSimulation(config, traces[i], options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return runs;
}

}  // namespace parallel
}  // namespace offload
