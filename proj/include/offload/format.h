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

#ifndef OFFLOAD_FORMAT_H_
#define OFFLOAD_FORMAT_H_

#include <cmath>
#include <cstdio>
#include <string>

namespace offload {

// Reports use fixed decimals: 2 for USD, 1 for ms, 2 for Mbps.
inline constexpr int kUsdPlaces = 2;
inline constexpr int kMsPlaces = 1;
inline constexpr int kMbpsPlaces = 2;
inline constexpr int kUtilityPlaces = 2;

// Half away from zero, so 16.875 -> 16.88.
inline double RoundTo(double value, int places) {
  const double scale = std::pow(10.0, places);
  return std::round(value * scale) / scale;
}

inline std::string Fixed(double value, int places) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", places, RoundTo(value, places));
  return buf;
}

}  // namespace offload

#endif  // OFFLOAD_FORMAT_H_
