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

#ifndef OFFLOAD_LATENCY_H_
#define OFFLOAD_LATENCY_H_

#include <optional>

#include "offload/profiles.h"

namespace offload {

// Relative slack applied when comparing a total latency against its SLO, so
// that a grant of exactly B_step counts as meeting the deadline.
inline constexpr double kSloRelativeTolerance = 1e-9;

struct LatencyBreakdown {
  double transmit_ms = 0.0;  // s / B
  double rtt_ms = 0.0;
  double exec_ms = 0.0;
  double total_ms = 0.0;  // transmit + rtt + exec

  // Table-style "Transfer" column: serialization plus one round trip.
  double transfer_ms() const { return transmit_ms + rtt_ms; }
};

// Serialization delay of `payload_bits` over `uplink_mbps` (1 Mbps = 1e3
// bits/ms). Zero payload costs nothing even at zero bandwidth.
double TransmitMs(double payload_bits, double uplink_mbps);

// Closed SLO boundary: total <= slo, up to kSloRelativeTolerance.
bool MeetsSlo(double total_ms, double slo_ms);

// Raw form of the end-to-end latency for a cloud placement.
LatencyBreakdown CloudLatency(double payload_bits, double uplink_mbps,
                              double rtt_ms, double exec_ms);

// On-vehicle placements ignore `net`; cloud placements pay s/B + RTT.
LatencyBreakdown TotalLatency(const ModelProfile& model,
                              const HardwareProfile& hardware,
                              const NetworkConditions& net);

// Minimum uplink (Mbps) at which the cloud placement meets the SLO, i.e.
// s / (slo - rtt - exec). nullopt when the latency budget is not positive.
std::optional<double> StepBandwidthMbps(double payload_bits, double slo_ms,
                                        double rtt_ms, double exec_ms);

std::optional<double> MinFeasibleBandwidth(const ModelProfile& model,
                                           const HardwareProfile& hardware,
                                           double slo_ms, double rtt_ms);

// total(local) / total(cloud incl. network).
double Speedup(const ModelProfile& model, const HardwareProfile& local_hw,
               const HardwareProfile& cloud_hw, const NetworkConditions& net);

}  // namespace offload

#endif  // OFFLOAD_LATENCY_H_
