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

#ifndef OFFLOAD_UTILITY_H_
#define OFFLOAD_UTILITY_H_

#include <string>
#include <vector>

#include "offload/profiles.h"

namespace offload {

// Provenance label for the zero step of an infeasible-until-B_step curve.
inline constexpr const char* kNoOption = "none";

struct Breakpoint {
  double bandwidth_mbps = 0.0;
  double utility = 0.0;
  std::string option_id;

  bool operator==(const Breakpoint&) const = default;
};

// Piecewise-constant, non-decreasing map from allocated bandwidth to utility.
//
// Canonical form: the first breakpoint sits at bandwidth 0, bandwidths are
// strictly increasing and so are utilities. The value at B is the utility of
// the last breakpoint with bandwidth <= B (steps are closed on the left).
class UtilityCurve {
 public:
  UtilityCurve() = default;

  // Throws std::invalid_argument if `breakpoints` is not canonical.
  explicit UtilityCurve(std::vector<Breakpoint> breakpoints);

  // Throws std::invalid_argument for negative bandwidth.
  double ValueAt(double bandwidth_mbps) const;

  // Index of the breakpoint that defines ValueAt(bandwidth_mbps).
  std::size_t IndexAt(double bandwidth_mbps) const;

  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  std::size_t size() const { return breakpoints_.size(); }
  const Breakpoint& operator[](std::size_t i) const { return breakpoints_[i]; }
  double floor() const { return breakpoints_.front().utility; }
  double ceiling() const { return breakpoints_.back().utility; }

  bool operator==(const UtilityCurve&) const = default;

 private:
  std::vector<Breakpoint> breakpoints_{{0.0, 0.0, kNoOption}};
};

bool IsCanonical(const std::vector<Breakpoint>& breakpoints);

// Step curve for one (model, hardware) option of `service`. Local options are
// flat at their accuracy; cloud options step from 0 to accuracy at B_step.
UtilityCurve ModelCurve(const Config& config, const ServiceSpec& service,
                        const ModelOption& option, double rtt_ms);

// Pointwise maximum over the local option and every remote option, with
// dominated steps removed. Equal (bandwidth, utility) ties keep the option
// with the smaller payload, then the lexicographically smaller id.
UtilityCurve ServiceCurve(const Config& config, const ServiceSpec& service,
                          double rtt_ms);

double UtilityAt(const UtilityCurve& curve, double bandwidth_mbps);

// CSV rows `service,bandwidth_mbps,utility,option_id` (no header).
std::string CurveCsvRows(const std::string& service, const UtilityCurve& curve);
inline constexpr const char* kCurveCsvHeader =
    "service,bandwidth_mbps,utility,option_id";

}  // namespace offload

#endif  // OFFLOAD_UTILITY_H_
