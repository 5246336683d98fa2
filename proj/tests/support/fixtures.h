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

#ifndef GSMARKET_TESTS_FIXTURES_H_
#define GSMARKET_TESTS_FIXTURES_H_

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gsmarket/core_model.h"
#include "gsmarket/instance.h"

namespace gsmarket {

inline void PrintTo(const Bundle& z, std::ostream* os) { *os << z.ToString(); }
inline void PrintTo(const PriceVector& p, std::ostream* os) { *os << p.ToString(); }
inline void PrintTo(const ItemSet& s, std::ostream* os) { *os << s.ToString(); }

}  // namespace gsmarket

namespace gsmarket::testing {

inline constexpr uint64_t kCorpusSeed = 20261019;
inline constexpr int kCorpusSize = 240;

std::string FixturePath(const std::string& name);
Instance LoadFixture(const std::string& name);

// Three unit-demand buyers, unit supply; k = 1, 2, 3 lowers buyer 1's
// weights step by step: (2,3,0), (2,2,0), (1,2,0).
Instance ValuationChange(int k);
Instance NoWalrasian();
Instance PackingNotLattice();
Instance CoveringNotLattice();
// k = 1..4: buyer 1 moves through (0,9,1,1), (0,9,2,1), (0,9,2,2), (0,10,2,2).
Instance MaxPriceRow(int k);
PriceVector MaxPriceRowExpected(int k);

// Six items with supply 2 and three buyers (Blue, Red, Green) whose
// minimal demand sets at p = 0 contain the recorded allocation.
Instance ExchangeGraphMarket();
std::vector<Bundle> RecordedAllocation();
// Nonzero exchange answers of the recorded auction stage, keyed by
// (buyer, e, f) with 0-based items.
std::map<std::tuple<int, int, int>, int64_t> RecordedWeights();
// Arcs (e, f) of the recorded exchange graph.
std::vector<std::pair<int, int>> RecordedArcs();

// The seed-pinned randomized corpus.
const std::vector<Instance>& Corpus();

}  // namespace gsmarket::testing

#endif  // GSMARKET_TESTS_FIXTURES_H_
