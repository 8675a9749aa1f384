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

#include "offload/latency.h"

#include <limits>

namespace offload {

double TransmitMs(double payload_bits, double uplink_mbps) {
  if (payload_bits <= 0.0) return 0.0;
  if (uplink_mbps <= 0.0) return std::numeric_limits<double>::infinity();
  return payload_bits / (uplink_mbps * 1e3);
}

bool MeetsSlo(double total_ms, double slo_ms) {
  return total_ms <= slo_ms * (1.0 + kSloRelativeTolerance);
}

LatencyBreakdown CloudLatency(double payload_bits, double uplink_mbps,
                              double rtt_ms, double exec_ms) {
  LatencyBreakdown out;
  out.transmit_ms = TransmitMs(payload_bits, uplink_mbps);
  out.rtt_ms = rtt_ms;
  out.exec_ms = exec_ms;
  out.total_ms = out.transmit_ms + out.rtt_ms + out.exec_ms;
  return out;
}

LatencyBreakdown TotalLatency(const ModelProfile& model,
                              const HardwareProfile& hardware,
                              const NetworkConditions& net) {
  const double exec_ms = ExecTimeMs(model, hardware.id);
  if (hardware.location == Location::kOnVehicle) {
    return {0.0, 0.0, exec_ms, exec_ms};
  }
  return CloudLatency(static_cast<double>(PayloadBits(model)), net.uplink_mbps,
                      net.rtt_ms, exec_ms);
}

std::optional<double> StepBandwidthMbps(double payload_bits, double slo_ms,
                                        double rtt_ms, double exec_ms) {
  const double budget_ms = slo_ms - rtt_ms - exec_ms;
  if (!(budget_ms > 0.0)) return std::nullopt;
  return payload_bits / (budget_ms * 1e3);
}

std::optional<double> MinFeasibleBandwidth(const ModelProfile& model,
                                           const HardwareProfile& hardware,
                                           double slo_ms, double rtt_ms) {
  const double exec_ms = ExecTimeMs(model, hardware.id);
  if (hardware.location == Location::kOnVehicle) {
    if (MeetsSlo(exec_ms, slo_ms)) return 0.0;
    return std::nullopt;
  }
  return StepBandwidthMbps(static_cast<double>(PayloadBits(model)), slo_ms,
                           rtt_ms, exec_ms);
}

double Speedup(const ModelProfile& model, const HardwareProfile& local_hw,
               const HardwareProfile& cloud_hw, const NetworkConditions& net) {
  const double local = TotalLatency(model, local_hw, net).total_ms;
  const double cloud = TotalLatency(model, cloud_hw, net).total_ms;
  return local / cloud;
}

}  // namespace offload
