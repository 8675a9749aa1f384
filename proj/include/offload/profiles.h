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

#ifndef OFFLOAD_PROFILES_H_
#define OFFLOAD_PROFILES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace offload {

// Malformed input: configuration, trace, pricing table or CLI usage.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A well-formed request that cannot be evaluated (e.g. missing exec time).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Location { kOnVehicle, kCloud };

std::string_view LocationName(Location location);

struct HardwareProfile {
  std::string id;
  Location location = Location::kOnVehicle;
  double hourly_cost_usd = 0.0;
  std::optional<double> purchase_cost_usd;

  bool operator==(const HardwareProfile&) const = default;
};

inline constexpr double kDefaultBitsPerPixel = 6.0;
inline constexpr std::int64_t kDefaultOutputSizeBits = 32768;

struct ModelProfile {
  std::string id;
  double accuracy = 0.0;  // mAP points, [0, 100]
  std::int64_t input_width = 0;
  std::int64_t input_height = 0;
  double bits_per_pixel = kDefaultBitsPerPixel;
  std::int64_t output_size_bits = kDefaultOutputSizeBits;
  std::map<std::string, double> exec_time_ms;  // hardware id -> ms

  bool operator==(const ModelProfile&) const = default;
};

// A (model, hardware) placement. Rendered as "model@hardware".
struct ModelOption {
  std::string model_id;
  std::string hardware_id;

  std::string Id() const { return model_id + "@" + hardware_id; }
  bool operator==(const ModelOption&) const = default;
};

struct ServiceSpec {
  std::string name;
  double slo_ms = 0.0;
  ModelOption local_option;
  std::vector<ModelOption> remote_options;

  bool operator==(const ServiceSpec&) const = default;
};

struct NetworkConditions {
  double uplink_mbps = 0.0;
  double rtt_ms = 0.0;
};

struct EconomicParams {
  double network_price_usd_per_gb = 0.0;  // decimal GB (1e9 bytes)
  double utilization_fraction = 1.0;

  bool operator==(const EconomicParams&) const = default;
};

// A validated configuration. Every id referenced by a service resolves to
// exactly one model and one hardware profile.
struct Config {
  std::vector<HardwareProfile> hardware;
  std::vector<ModelProfile> models;
  std::vector<ServiceSpec> services;
  EconomicParams economics;

  const HardwareProfile& Hardware(std::string_view id) const;
  const ModelProfile& Model(std::string_view id) const;
  const ServiceSpec& Service(std::string_view name) const;
  const HardwareProfile* FindHardware(std::string_view id) const;
  const ModelProfile* FindModel(std::string_view id) const;
  const ServiceSpec* FindService(std::string_view name) const;

  bool operator==(const Config&) const = default;
};

// Input payload size s = width * height * bits_per_pixel, rounded up.
std::int64_t PayloadBits(const ModelProfile& model);

double ExecTimeMs(const ModelProfile& model, std::string_view hardware_id);

// Throws ConfigError naming the violated invariant and the offending id.
void Validate(const Config& config);

Config ParseConfig(std::string_view json_text);
Config LoadConfig(const std::string& path);
std::string SerializeConfig(const Config& config);

}  // namespace offload

#endif  // OFFLOAD_PROFILES_H_
