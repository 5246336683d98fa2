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

#include "fixtures.h"

#include <algorithm>
#include <set>

#include "gsmarket/generators.h"
#include "gsmarket/io.h"

namespace gsmarket::testing {

std::string FixturePath(const std::string& name) {
  return std::string(GSM_FIXTURE_DIR) + "/" + name + ".json";
}

Instance LoadFixture(const std::string& name) { return LoadInstance(FixturePath(name)); }

Instance ValuationChange(int k) { return LoadFixture("valuation_change_" + std::to_string(k)); }
Instance NoWalrasian() { return LoadFixture("no_walrasian"); }
Instance PackingNotLattice() { return LoadFixture("packing_not_lattice"); }
Instance CoveringNotLattice() { return LoadFixture("covering_not_lattice"); }
Instance MaxPriceRow(int k) { return LoadFixture("max_price_row_" + std::to_string(k)); }

PriceVector MaxPriceRowExpected(int k) {
  return k == 2 || k == 3 ? PriceVector{3, 7, 0, 0} : PriceVector{4, 8, 0, 0};
}

Instance ExchangeGraphMarket() { return LoadFixture("exchange_graph"); }

std::vector<Bundle> RecordedAllocation() {
  return {Bundle{2, 2, 2, 1, 0, 0}, Bundle{2, 1, 0, 0, 1, 1}, Bundle{0, 2, 0, 1, 1, 0}};
}

std::map<std::tuple<int, int, int>, int64_t> RecordedWeights() {
  constexpr int kBlue = 0, kRed = 1, kGreen = 2;
  return {
      {{kBlue, 3, 0}, 1},  {{kBlue, 3, 1}, 1},  {{kBlue, 3, 2}, 1},
      {{kRed, 2, 0}, 2},   {{kRed, 2, 1}, 1},   {{kRed, 4, 5}, 1},
      {{kGreen, 0, 4}, 1}, {{kGreen, 2, 3}, 1}, {{kGreen, 3, 1}, 1},
      {{kGreen, 3, 4}, 1},
  };
}

std::vector<std::pair<int, int>> RecordedArcs() {
  std::set<std::pair<int, int>> arcs;
  for (const auto& [key, w] : RecordedWeights())
    if (w > 0) arcs.emplace(std::get<1>(key), std::get<2>(key));
  return {arcs.begin(), arcs.end()};
}

const std::vector<Instance>& Corpus() {
  static const std::vector<Instance> corpus = DeskCorpus(kCorpusSize, kCorpusSeed);
  return corpus;
}

}  // namespace gsmarket::testing
