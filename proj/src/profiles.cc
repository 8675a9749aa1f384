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

#include "offload/profiles.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace offload {
namespace {

using nlohmann::json;

void RejectUnknownKeys(const json& object, const std::set<std::string>& allowed,
                       const std::string& where) {
  if (!object.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

const json& Required(const json& object, const std::string& key,
                     const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw ConfigError(where + ": missing key '" + key + "'");
  }
  return *it;
}

double GetNumber(const json& value, const std::string& where) {
  if (!value.is_number()) throw ConfigError(where + ": expected a number");
  return value.get<double>();
}

std::int64_t GetInteger(const json& value, const std::string& where) {
  if (!value.is_number_integer()) {
    throw ConfigError(where + ": expected an integer");
  }
  return value.get<std::int64_t>();
}

std::string GetString(const json& value, const std::string& where) {
  if (!value.is_string()) throw ConfigError(where + ": expected a string");
  return value.get<std::string>();
}

Location ParseLocation(const json& value, const std::string& where) {
  const std::string name = GetString(value, where);
  if (name == "OnVehicle") return Location::kOnVehicle;
  if (name == "Cloud") return Location::kCloud;
  throw ConfigError(where + ": unknown location '" + name + "'");
}

HardwareProfile ParseHardware(const json& j) {
  std::string where = "hardware";
  RejectUnknownKeys(j, {"id", "location", "hourly_cost_usd", "purchase_cost_usd"},
                    where);
  HardwareProfile hw;
  hw.id = GetString(Required(j, "id", where), where + ".id");
  where += " '" + hw.id + "'";
  hw.location = ParseLocation(Required(j, "location", where), where + ".location");
  hw.hourly_cost_usd =
      GetNumber(Required(j, "hourly_cost_usd", where), where + ".hourly_cost_usd");
  if (auto it = j.find("purchase_cost_usd"); it != j.end() && !it->is_null()) {
    hw.purchase_cost_usd = GetNumber(*it, where + ".purchase_cost_usd");
  }
  return hw;
}

ModelOption ParseOption(const json& j, const std::string& where) {
  RejectUnknownKeys(j, {"model", "hardware"}, where);
  return {GetString(Required(j, "model", where), where + ".model"),
          GetString(Required(j, "hardware", where), where + ".hardware")};
}

ModelProfile ParseModel(const json& j) {
  std::string where = "model";
  RejectUnknownKeys(j,
                    {"id", "accuracy", "input_width", "input_height",
                     "bits_per_pixel", "output_size_bits", "exec_time_ms"},
                    where);
  ModelProfile m;
  m.id = GetString(Required(j, "id", where), where + ".id");
  where += " '" + m.id + "'";
  m.accuracy = GetNumber(Required(j, "accuracy", where), where + ".accuracy");
  m.input_width =
      GetInteger(Required(j, "input_width", where), where + ".input_width");
  m.input_height =
      GetInteger(Required(j, "input_height", where), where + ".input_height");
  if (auto it = j.find("bits_per_pixel"); it != j.end()) {
    m.bits_per_pixel = GetNumber(*it, where + ".bits_per_pixel");
  }
  if (auto it = j.find("output_size_bits"); it != j.end()) {
    m.output_size_bits = GetInteger(*it, where + ".output_size_bits");
  }
  const json& exec = Required(j, "exec_time_ms", where);
  if (!exec.is_object()) {
    throw ConfigError(where + ".exec_time_ms: expected an object");
  }
  for (const auto& [hw, ms] : exec.items()) {
    m.exec_time_ms[hw] = GetNumber(ms, where + ".exec_time_ms." + hw);
  }
  return m;
}

ServiceSpec ParseService(const json& j) {
  std::string where = "service";
  RejectUnknownKeys(j, {"name", "slo_ms", "local_option", "remote_options"},
                    where);
  ServiceSpec s;
  s.name = GetString(Required(j, "name", where), where + ".name");
  where += " '" + s.name + "'";
  s.slo_ms = GetNumber(Required(j, "slo_ms", where), where + ".slo_ms");
  s.local_option =
      ParseOption(Required(j, "local_option", where), where + ".local_option");
  if (auto it = j.find("remote_options"); it != j.end()) {
    if (!it->is_array()) {
      throw ConfigError(where + ".remote_options: expected an array");
    }
    for (const json& option : *it) {
      s.remote_options.push_back(
          ParseOption(option, where + ".remote_options"));
    }
  }
  return s;
}

EconomicParams ParseEconomics(const json& j) {
  const std::string where = "economics";
  RejectUnknownKeys(j, {"network_price_usd_per_gb", "utilization_fraction"},
                    where);
  EconomicParams e;
  e.network_price_usd_per_gb =
      GetNumber(Required(j, "network_price_usd_per_gb", where),
                where + ".network_price_usd_per_gb");
  e.utilization_fraction = GetNumber(Required(j, "utilization_fraction", where),
                                     where + ".utilization_fraction");
  return e;
}

const json& RequiredArray(const json& root, const std::string& key) {
  const json& value = Required(root, key, "config");
  if (!value.is_array()) throw ConfigError("config." + key + ": expected an array");
  return value;
}

json OptionToJson(const ModelOption& option) {
  return {{"model", option.model_id}, {"hardware", option.hardware_id}};
}

void CheckOption(const Config& config, const ServiceSpec& service,
                 const ModelOption& option, Location expected) {
  const std::string where = "service '" + service.name + "' option '" +
                            option.Id() + "'";
  const ModelProfile* model = config.FindModel(option.model_id);
  if (!model) {
    throw ConfigError(where + ": unknown model '" + option.model_id + "'");
  }
  const HardwareProfile* hw = config.FindHardware(option.hardware_id);
  if (!hw) {
    throw ConfigError(where + ": unknown hardware '" + option.hardware_id + "'");
  }
  if (hw->location != expected) {
    throw ConfigError(where + ": hardware must be " +
                      std::string(LocationName(expected)));
  }
  if (!model->exec_time_ms.count(option.hardware_id)) {
    throw ConfigError(where + ": model has no exec time on hardware");
  }
}

}  // namespace

std::string_view LocationName(Location location) {
  return location == Location::kCloud ? "Cloud" : "OnVehicle";
}

const HardwareProfile* Config::FindHardware(std::string_view id) const {
  for (const auto& hw : hardware) {
    if (hw.id == id) return &hw;
  }
  return nullptr;
}

const ModelProfile* Config::FindModel(std::string_view id) const {
  for (const auto& m : models) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

const ServiceSpec* Config::FindService(std::string_view name) const {
  for (const auto& s : services) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const HardwareProfile& Config::Hardware(std::string_view id) const {
  if (const auto* hw = FindHardware(id)) return *hw;
  throw ConfigError("unknown hardware '" + std::string(id) + "'");
}

const ModelProfile& Config::Model(std::string_view id) const {
  if (const auto* m = FindModel(id)) return *m;
  throw ConfigError("unknown model '" + std::string(id) + "'");
}

const ServiceSpec& Config::Service(std::string_view name) const {
  if (const auto* s = FindService(name)) return *s;
  throw ConfigError("unknown service '" + std::string(name) + "'");
}

std::int64_t PayloadBits(const ModelProfile& model) {
  const double bits = static_cast<double>(model.input_width) *
                      static_cast<double>(model.input_height) *
                      model.bits_per_pixel;
  return static_cast<std::int64_t>(std::ceil(bits));
}

double ExecTimeMs(const ModelProfile& model, std::string_view hardware_id) {
  auto it = model.exec_time_ms.find(std::string(hardware_id));
  if (it == model.exec_time_ms.end()) {
    throw ComputationError("model '" + model.id + "' has no exec time on '" +
                           std::string(hardware_id) + "'");
  }
  return it->second;
}

void Validate(const Config& config) {
  std::set<std::string> ids;
  for (const auto& hw : config.hardware) {
    const std::string where = "hardware '" + hw.id + "'";
    if (hw.id.empty()) throw ConfigError("hardware: empty id");
    if (!ids.insert(hw.id).second) throw ConfigError(where + ": duplicate id");
    if (!(hw.hourly_cost_usd >= 0.0)) {
      throw ConfigError(where + ": hourly_cost_usd must be >= 0");
    }
    if (hw.purchase_cost_usd && !(*hw.purchase_cost_usd > 0.0)) {
      throw ConfigError(where + ": purchase_cost_usd must be > 0");
    }
  }

  ids.clear();
  for (const auto& m : config.models) {
    const std::string where = "model '" + m.id + "'";
    if (m.id.empty()) throw ConfigError("model: empty id");
    if (!ids.insert(m.id).second) throw ConfigError(where + ": duplicate id");
    if (!(m.accuracy >= 0.0 && m.accuracy <= 100.0)) {
      throw ConfigError(where + ": accuracy must be within [0, 100]");
    }
    if (m.input_width <= 0 || m.input_height <= 0) {
      throw ConfigError(where + ": input dimensions must be positive");
    }
    if (!(m.bits_per_pixel > 0.0)) {
      throw ConfigError(where + ": bits_per_pixel must be positive");
    }
    if (m.output_size_bits < 0) {
      throw ConfigError(where + ": output_size_bits must be >= 0");
    }
    for (const auto& [hw, ms] : m.exec_time_ms) {
      if (!config.FindHardware(hw)) {
        throw ConfigError(where + ": unknown hardware '" + hw + "'");
      }
      if (!(ms > 0.0)) {
        throw ConfigError(where + ": exec_time_ms on '" + hw +
                          "' must be positive");
      }
    }
  }

  ids.clear();
  for (const auto& s : config.services) {
    const std::string where = "service '" + s.name + "'";
    if (s.name.empty()) throw ConfigError("service: empty name");
    if (!ids.insert(s.name).second) throw ConfigError(where + ": duplicate name");
    if (!(s.slo_ms > 0.0)) throw ConfigError(where + ": slo_ms must be positive");
    CheckOption(config, s, s.local_option, Location::kOnVehicle);
    const double local_ms = ExecTimeMs(config.Model(s.local_option.model_id),
                                       s.local_option.hardware_id);
    if (local_ms > s.slo_ms) {
      throw ConfigError(where + ": local option violates SLO (" +
                        s.local_option.Id() + ")");
    }
    std::set<std::string> option_ids;
    for (const auto& option : s.remote_options) {
      CheckOption(config, s, option, Location::kCloud);
      if (!option_ids.insert(option.Id()).second) {
        throw ConfigError(where + ": duplicate remote option '" + option.Id() +
                          "'");
      }
    }
  }

  const auto& e = config.economics;
  if (!(e.network_price_usd_per_gb >= 0.0)) {
    throw ConfigError("economics: network_price_usd_per_gb must be >= 0");
  }
  if (!(e.utilization_fraction > 0.0 && e.utilization_fraction <= 1.0)) {
    throw ConfigError("economics: utilization_fraction must be within (0, 1]");
  }
}

Config ParseConfig(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  RejectUnknownKeys(root, {"hardware", "models", "services", "economics"},
                    "config");
  Config config;
  for (const json& j : RequiredArray(root, "hardware")) {
    config.hardware.push_back(ParseHardware(j));
  }
  for (const json& j : RequiredArray(root, "models")) {
    config.models.push_back(ParseModel(j));
  }
  for (const json& j : RequiredArray(root, "services")) {
    config.services.push_back(ParseService(j));
  }
  config.economics = ParseEconomics(Required(root, "economics", "config"));
  Validate(config);
  return config;
}

Config LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string SerializeConfig(const Config& config) {
  json root;
  root["hardware"] = json::array();
  for (const auto& hw : config.hardware) {
    json j = {{"id", hw.id},
              {"location", LocationName(hw.location)},
              {"hourly_cost_usd", hw.hourly_cost_usd}};
    if (hw.purchase_cost_usd) j["purchase_cost_usd"] = *hw.purchase_cost_usd;
    root["hardware"].push_back(std::move(j));
  }
  root["models"] = json::array();
  for (const auto& m : config.models) {
    json exec = json::object();
    for (const auto& [hw, ms] : m.exec_time_ms) exec[hw] = ms;
    root["models"].push_back({{"id", m.id},
                              {"accuracy", m.accuracy},
                              {"input_width", m.input_width},
                              {"input_height", m.input_height},
                              {"bits_per_pixel", m.bits_per_pixel},
                              {"output_size_bits", m.output_size_bits},
                              {"exec_time_ms", std::move(exec)}});
  }
  root["services"] = json::array();
  for (const auto& s : config.services) {
    json remote = json::array();
    for (const auto& option : s.remote_options) {
      remote.push_back(OptionToJson(option));
    }
    root["services"].push_back({{"name", s.name},
                                {"slo_ms", s.slo_ms},
                                {"local_option", OptionToJson(s.local_option)},
                                {"remote_options", std::move(remote)}});
  }
  root["economics"] = {
      {"network_price_usd_per_gb", config.economics.network_price_usd_per_gb},
      {"utilization_fraction", config.economics.utilization_fraction}};
  return root.dump(2) + "\n";
}

}  // namespace offload
