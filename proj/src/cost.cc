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

#include "offload/cost.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace offload {
namespace {

std::string Trim(std::string s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(Trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

double DataGbPerHour(double uplink_mbps) {
  return uplink_mbps * 1e6 * 3600.0 / kBitsPerGb;
}

double NetworkCostPerHour(double uplink_mbps, double price_usd_per_gb) {
  return DataGbPerHour(uplink_mbps) * price_usd_per_gb;
}

double BreakEvenYears(double purchase_usd, double hourly_usd,
                      double utilization_fraction) {
  if (!(hourly_usd > 0.0)) {
    throw std::invalid_argument("hourly cost must be positive");
  }
  if (!(utilization_fraction > 0.0 && utilization_fraction <= 1.0)) {
    throw std::invalid_argument("utilization must be within (0, 1]");
  }
  if (!(purchase_usd >= 0.0)) {
    throw std::invalid_argument("purchase cost must be non-negative");
  }
  return purchase_usd / (hourly_usd * utilization_fraction * kHoursPerYear);
}

CostBreakdown SimulateCost(double total_bits, double hours,
                           const EconomicParams& params,
                           const HardwareProfile& hardware) {
  if (!(hours > 0.0)) throw std::invalid_argument("hours must be positive");
  CostBreakdown out;
  const double gb = total_bits / kBitsPerGb;
  out.data_gb_per_hour = gb / hours;
  const double network_usd = gb * params.network_price_usd_per_gb;
  const double compute_usd = hardware.hourly_cost_usd * hours;
  out.network_usd_per_hour = network_usd / hours;
  out.compute_usd_per_hour = compute_usd / hours;
  out.total_usd_per_hour = out.network_usd_per_hour + out.compute_usd_per_hour;
  return out;
}

std::vector<CountryPrice> ParseCountryPrices(const std::string& csv_text) {
  std::vector<CountryPrice> out;
  std::stringstream in(csv_text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto fields = SplitCsv(line);
    const std::string where = "prices line " + std::to_string(line_no);
    if (fields.size() != 3) throw ConfigError(where + ": expected 3 fields");
    if (line_no == 1 && fields[0] == "rank") continue;
    CountryPrice row;
    if (fields[0] != "--") {
      int rank = 0;
      auto [p, ec] = std::from_chars(fields[0].data(),
                                     fields[0].data() + fields[0].size(), rank);
      if (ec != std::errc() || p != fields[0].data() + fields[0].size()) {
        throw ConfigError(where + ": bad rank '" + fields[0] + "'");
      }
      row.rank = rank;
    }
    row.country = fields[1];
    if (row.country.empty()) throw ConfigError(where + ": empty country");
    try {
      std::size_t used = 0;
      row.usd_per_gb = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError(where + ": bad price '" + fields[2] + "'");
    }
    if (!(row.usd_per_gb >= 0.0)) throw ConfigError(where + ": negative price");
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<CountryPrice> LoadCountryPrices(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open price table '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseCountryPrices(buffer.str());
}

}  // namespace offload
