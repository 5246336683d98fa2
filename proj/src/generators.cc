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

#include "gsmarket/generators.h"

#include <algorithm>

#include "gsmarket/error.h"

namespace gsmarket {

namespace {

constexpr Family kBaseFamilies[] = {Family::kUnitDemand, Family::kAdditive, Family::kMatroidRank,
                                    Family::kOxs};

std::vector<int64_t> RandomWeights(int m, int64_t cap, Pcg32& rng) {
  std::vector<int64_t> w(m);
  for (auto& x : w) x = rng.Between(0, cap);
  return w;
}

MatroidDesc RandomMatroid(int m, Pcg32& rng) {
  switch (rng.Below(3)) {
    case 0:
      return UniformMatroid{static_cast<int>(rng.Between(1, m))};
    case 1: {
      const int k = static_cast<int>(rng.Between(1, m));
      std::vector<std::vector<int>> blocks(k);
      for (int e = 0; e < m; ++e) blocks[rng.Below(k)].push_back(e);
      PartitionMatroid pm;
      for (auto& blk : blocks) {
        if (blk.empty()) continue;
        pm.caps.push_back(static_cast<int>(rng.Between(1, static_cast<int64_t>(blk.size()))));
        pm.blocks.push_back(blk);
      }
      return pm;
    }
    default: {
      GraphicMatroid g;
      g.vertex_count = std::max(2, m / 2 + 1);
      for (int e = 0; e < m; ++e) {
        const int a = static_cast<int>(rng.Below(g.vertex_count));
        const int b = static_cast<int>(rng.Below(g.vertex_count));
        g.edges.emplace_back(a, b);
      }
      return g;
    }
  }
}

// Lowers one random positive weight at a time until v(b) <= cap.
template <typename Build>
Valuation CapWeights(std::vector<int64_t>& w, const Bundle& supply, int64_t cap, Pcg32& rng,
                     Build build) {
  for (;;) {
    Valuation v = build(w);
    if (v.Value(supply) <= cap) return v;
    std::vector<int> positive;
    for (int k = 0; k < static_cast<int>(w.size()); ++k)
      if (w[k] > 0) positive.push_back(k);
    GSM_CHECK(!positive.empty(), "value above cap with zero weights");
    --w[positive[rng.Below(static_cast<uint32_t>(positive.size()))]];
  }
}

}  // namespace

const char* FamilyName(Family family) {
  switch (family) {
    case Family::kUnitDemand: return "unit_demand";
    case Family::kAdditive: return "additive";
    case Family::kMatroidRank: return "matroid_rank";
    case Family::kOxs: return "oxs";
    case Family::kTable: return "table";
    case Family::kMixed: return "mixed";
  }
  return "?";
}

std::optional<Family> ParseFamily(const std::string& name) {
  for (Family f : {Family::kUnitDemand, Family::kAdditive, Family::kMatroidRank, Family::kOxs,
                   Family::kTable, Family::kMixed})
    if (name == FamilyName(f)) return f;
  return std::nullopt;
}

Valuation GenerateValuation(Family family, const Bundle& supply, int64_t value_cap, Pcg32& rng) {
  const int m = supply.size();
  switch (family) {
    case Family::kUnitDemand: {
      auto w = RandomWeights(m, value_cap, rng);
      return CapWeights(w, supply, value_cap, rng,
                        [](const std::vector<int64_t>& x) { return Valuation::MakeUnitDemand(x); });
    }
    case Family::kAdditive: {
      auto w = RandomWeights(m, value_cap, rng);
      return CapWeights(w, supply, value_cap, rng,
                        [](const std::vector<int64_t>& x) { return Valuation::MakeAdditive(x); });
    }
    case Family::kMatroidRank: {
      MatroidDesc desc = RandomMatroid(m, rng);
      auto w = RandomWeights(m, value_cap, rng);
      return CapWeights(w, supply, value_cap, rng, [&](const std::vector<int64_t>& x) {
        return Valuation::MakeMatroidRank(desc, x);
      });
    }
    case Family::kOxs: {
      const int t = static_cast<int>(rng.Between(1, m));
      std::vector<std::pair<int, int>> slots;
      for (int e = 0; e < m; ++e)
        for (int r = 0; r < t; ++r)
          if (rng.Below(2)) slots.emplace_back(e, r);
      auto w = std::vector<int64_t>(slots.size());
      for (auto& x : w) x = rng.Between(1, value_cap);
      return CapWeights(w, supply, value_cap, rng, [&](const std::vector<int64_t>& x) {
        std::vector<OxsEdge> edges;
        for (size_t k = 0; k < slots.size(); ++k)
          edges.push_back({slots[k].first, slots[k].second, x[k]});
        return Valuation::MakeOxs(m, t, edges);
      });
    }
    case Family::kTable: {
      if (BoxCount(supply) > kMaxTableBox)
        throw MarketError(ErrorCode::kEnumerationLimit, "table family needs a box of at most " +
                                                            std::to_string(kMaxTableBox) + " bundles");
      Valuation inner = GenerateValuation(kBaseFamilies[rng.Below(4)], supply, value_cap, rng);
      return Valuation::MakeTable(
          supply, [&](const Bundle& z) { return inner.Value(z); }, true);
    }
    case Family::kMixed: {
      // Tables only where tabulating and certifying stays cheap.
      const uint32_t pick = rng.Below(5);
      const Family f = pick == 4 && BoxCount(supply) <= kMaxMixedTableBox ? Family::kTable
                                                                          : kBaseFamilies[pick % 4];
      return GenerateValuation(f, supply, value_cap, rng);
    }
  }
  throw MarketError(ErrorCode::kInvalidInstance, "unknown family");
}

Instance GenerateInstance(const GenSpec& spec) {
  if (spec.m < 1 || spec.m > kMaxItems || spec.n < 1 || spec.max_supply < 1 || spec.value_cap < 0)
    throw MarketError(ErrorCode::kInvalidInstance, "generator parameters must be positive");
  Pcg32 rng(spec.seed);
  Bundle supply(spec.m);
  for (int e = 0; e < spec.m; ++e) supply[e] = static_cast<int>(rng.Between(1, spec.max_supply));
  std::vector<Valuation> buyers;
  for (int i = 0; i < spec.n; ++i)
    buyers.push_back(GenerateValuation(spec.family, supply, spec.value_cap, rng));
  return Instance(supply, buyers, std::nullopt);
}

std::vector<Instance> DeskCorpus(int count, uint64_t seed) {
  Pcg32 rng(seed);
  std::vector<Instance> out;
  for (int k = 0; k < count; ++k) {
    GenSpec spec;
    spec.family = Family::kMixed;
    spec.m = static_cast<int>(rng.Between(1, 4));
    spec.n = static_cast<int>(rng.Between(1, 3));
    spec.max_supply = static_cast<int>(rng.Between(1, 2));
    spec.value_cap = 6;
    spec.seed = (static_cast<uint64_t>(rng.Next()) << 32) | rng.Next();
    out.push_back(GenerateInstance(spec));
  }
  return out;
}

}  // namespace gsmarket
