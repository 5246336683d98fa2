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

#ifndef GSMARKET_GENERATORS_H_
#define GSMARKET_GENERATORS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsmarket/instance.h"
#include "gsmarket/prng.h"

namespace gsmarket {

enum class Family { kUnitDemand, kAdditive, kMatroidRank, kOxs, kTable, kMixed };

const char* FamilyName(Family family);
std::optional<Family> ParseFamily(const std::string& name);

struct GenSpec {
  Family family = Family::kMixed;
  int m = 3;
  int n = 2;
  int max_supply = 1;     // B: b(e) uniform on [1, B]
  int64_t value_cap = 6;  // every v_i(b) <= value_cap
  uint64_t seed = 0;
};

// Tables tabulate a random valuation of another family on the supply box
// and carry an M-natural-concavity certificate.
constexpr int64_t kMaxTableBox = 4096;
constexpr int64_t kMaxMixedTableBox = 256;

Valuation GenerateValuation(Family family, const Bundle& supply, int64_t value_cap, Pcg32& rng);
Instance GenerateInstance(const GenSpec& spec);

// Seed-pinned desk-scale corpus: m <= 4, n <= 3, B <= 2, values <= 6, mixed.
std::vector<Instance> DeskCorpus(int count, uint64_t seed);

}  // namespace gsmarket

#endif  // GSMARKET_GENERATORS_H_
