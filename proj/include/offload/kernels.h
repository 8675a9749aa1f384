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

#ifndef OFFLOAD_KERNELS_H_
#define OFFLOAD_KERNELS_H_

#include <span>
#include <vector>

#include "offload/allocation.h"
#include "offload/simulator.h"
#include "offload/utility.h"

// Data-parallel kernels. Each parallel routine has a serial counterpart that
// produces identical output and is kept as the reference in tests and the
// benchmark.

namespace offload::serial {

void EvaluateCurve(const UtilityCurve& curve, std::span<const double> bandwidths,
                   std::span<double> out);

std::vector<SimulationRun> RunSweep(
    const Config& config, std::span<const std::vector<TracePoint>> traces,
    const SimulationOptions& options);

}  // namespace offload::serial

namespace offload::parallel {

// OpenMP over the flattened combination index. Same result as
// offload::BruteForceOracle, since the selection order is total.
AllocationResult BruteForceOracle(const AllocationProblem& problem);

void EvaluateCurve(const UtilityCurve& curve, std::span<const double> bandwidths,
                   std::span<double> out);

// One independent simulation per trace.
std::vector<SimulationRun> RunSweep(
    const Config& config, std::span<const std::vector<TracePoint>> traces,
    const SimulationOptions& options);

}  // namespace offload::parallel

#endif  // OFFLOAD_KERNELS_H_
