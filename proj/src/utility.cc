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

#include "offload/utility.h"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <tuple>

#include "offload/latency.h"

namespace offload {
namespace {

struct StepCandidate {
  double bandwidth_mbps;
  double utility;
  std::int64_t payload_bits;
  std::string option_id;
};

// Step at which `option` first meets the service SLO, if ever.
std::optional<double> OptionStep(const Config& config,
                                 const ServiceSpec& service,
                                 const ModelOption& option, double rtt_ms,
                                 const ModelProfile** model_out) {
  const ModelProfile& model = config.Model(option.model_id);
  const HardwareProfile& hw = config.Hardware(option.hardware_id);
  *model_out = &model;
  return MinFeasibleBandwidth(model, hw, service.slo_ms, rtt_ms);
}

}  // namespace

bool IsCanonical(const std::vector<Breakpoint>& breakpoints) {
  if (breakpoints.empty() || breakpoints.front().bandwidth_mbps != 0.0) {
    return false;
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i].bandwidth_mbps > breakpoints[i - 1].bandwidth_mbps) ||
        !(breakpoints[i].utility > breakpoints[i - 1].utility)) {
      return false;
    }
  }
  return true;
}

UtilityCurve::UtilityCurve(std::vector<Breakpoint> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  if (!IsCanonical(breakpoints_)) {
    throw std::invalid_argument("utility curve breakpoints are not canonical");
  }
}

std::size_t UtilityCurve::IndexAt(double bandwidth_mbps) const {
  if (bandwidth_mbps < 0.0) {
    throw std::invalid_argument("bandwidth must be non-negative");
  }
  auto it = std::upper_bound(
      breakpoints_.begin(), breakpoints_.end(), bandwidth_mbps,
      [](double b, const Breakpoint& bp) { return b < bp.bandwidth_mbps; });
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

double UtilityCurve::ValueAt(double bandwidth_mbps) const {
  return breakpoints_[IndexAt(bandwidth_mbps)].utility;
}

double UtilityAt(const UtilityCurve& curve, double bandwidth_mbps) {
  return curve.ValueAt(bandwidth_mbps);
}

UtilityCurve ModelCurve(const Config& config, const ServiceSpec& service,
                        const ModelOption& option, double rtt_ms) {
  const ModelProfile* model = nullptr;
  const auto step = OptionStep(config, service, option, rtt_ms, &model);
  if (!step) return UtilityCurve({{0.0, 0.0, kNoOption}});
  if (*step == 0.0 || model->accuracy == 0.0) {
    return UtilityCurve({{0.0, model->accuracy, option.Id()}});
  }
  return UtilityCurve(
      {{0.0, 0.0, kNoOption}, {*step, model->accuracy, option.Id()}});
}

UtilityCurve ServiceCurve(const Config& config, const ServiceSpec& service,
                          double rtt_ms) {
  std::vector<StepCandidate> candidates;
  auto add = [&](const ModelOption& option) {
    const ModelProfile* model = nullptr;
    if (auto step = OptionStep(config, service, option, rtt_ms, &model)) {
      candidates.push_back(
          {*step, model->accuracy, PayloadBits(*model), option.Id()});
    }
  };
  add(service.local_option);
  for (const auto& option : service.remote_options) add(option);

  std::sort(candidates.begin(), candidates.end(),
            [](const StepCandidate& a, const StepCandidate& b) {
              return std::tie(a.bandwidth_mbps, b.utility, a.payload_bits,
                              a.option_id) <
                     std::tie(b.bandwidth_mbps, a.utility, b.payload_bits,
                              b.option_id);
            });

  std::vector<Breakpoint> out;
  // The local option is always feasible, so a step at bandwidth 0 exists.
  // Within equal bandwidth the best candidate sorts first.
  for (const auto& c : candidates) {
    if (out.empty() || c.utility > out.back().utility) {
      out.push_back({c.bandwidth_mbps, c.utility, c.option_id});
    }
  }
  return UtilityCurve(std::move(out));
}

std::string CurveCsvRows(const std::string& service, const UtilityCurve& curve) {
  std::string out;
  char line[256];
  for (const auto& bp : curve.breakpoints()) {
    std::snprintf(line, sizeof(line), "%s,%.2f,%.2f,%s\n", service.c_str(),
                  bp.bandwidth_mbps, bp.utility, bp.option_id.c_str());
    out += line;
  }
  return out;
}

}  // namespace offload
