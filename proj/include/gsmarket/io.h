// Copyright 2026 The Authors.
//
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

#ifndef GSMARKET_IO_H_
#define GSMARKET_IO_H_

#include <cstdint>
#include <string>

#include "json.hpp"
#include "gsmarket/auctions.h"
#include "gsmarket/instance.h"

namespace gsmarket {

using Json = nlohmann::ordered_json;

Json ValuationToJson(const Valuation& v);
Valuation ValuationFromJson(const Json& j, int item_count);

Json InstanceToJson(const Instance& inst);
Instance InstanceFromJson(const Json& j);
std::string SerializeInstance(const Instance& inst);  // pretty, trailing newline
Instance ParseInstance(const std::string& text);
Instance LoadInstance(const std::string& path);

// FNV-1a over the compact canonical serialization, 16 hex digits.
std::string InstanceDigest(const Instance& inst);

Json TraceToJson(const AuctionTrace& trace, const std::string& digest);
AuctionTrace TraceFromJson(const Json& j, std::string* digest = nullptr);

struct ReplayResult {
  bool ok = true;
  int first_divergent_round = -1;  // -1: none
  std::string detail;
  PriceVector final_prices;
};
// Recomputes every recorded round from the recorded start.
ReplayResult ReplayTrace(const Instance& inst, const AuctionTrace& trace);

std::string FormatPrices(const PriceVector& p);  // "(0, 1, 1)"
PriceVector ParsePrices(const std::string& csv, int m);

}  // namespace gsmarket

#endif  // GSMARKET_IO_H_
