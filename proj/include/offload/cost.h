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

#ifndef OFFLOAD_COST_H_
#define OFFLOAD_COST_H_

#include <optional>
#include <string>
#include <vector>

#include "offload/profiles.h"

namespace offload {

inline constexpr double kHoursPerYear = 8760.0;  // 365 days
inline constexpr double kBitsPerGb = 8e9;        // decimal GB

struct CostBreakdown {
  double network_usd_per_hour = 0.0;
  double compute_usd_per_hour = 0.0;
  double total_usd_per_hour = 0.0;
  double data_gb_per_hour = 0.0;
};

// Decimal GB moved per hour at a sustained uplink rate.
double DataGbPerHour(double uplink_mbps);

double NetworkCostPerHour(double uplink_mbps, double price_usd_per_gb);

// Years of renting at `hourly_usd` (used `utilization_fraction` of the time)
// before spending `purchase_usd`. Throws std::invalid_argument unless
// hourly_usd > 0 and utilization_fraction in (0, 1].
double BreakEvenYears(double purchase_usd, double hourly_usd,
                      double utilization_fraction);

// Hourly rates from a simulated aggregate: network cost from the bits that
// were actually sent, compute cost from renting `hardware` for `hours`.
CostBreakdown SimulateCost(double total_bits, double hours,
                           const EconomicParams& params,
                           const HardwareProfile& hardware);

struct CountryPrice {
  std::optional<int> rank;
  std::string country;
  double usd_per_gb = 0.0;
};

// CSV `rank,country,usd_per_gb`; an unranked row uses "--".
std::vector<CountryPrice> ParseCountryPrices(const std::string& csv_text);
std::vector<CountryPrice> LoadCountryPrices(const std::string& path);

}  // namespace offload

#endif  // OFFLOAD_COST_H_
