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

#include <gtest/gtest.h>

#include "fixtures.h"
#include "gsmarket/bruteforce.h"
#include "gsmarket/demand_sets.h"

namespace gsmarket {
namespace {

using testing::CoveringNotLattice;
using testing::ExchangeGraphMarket;
using testing::RecordedAllocation;
using testing::ValuationChange;

std::vector<std::pair<int, int>> ArcPairs(const ExchangeGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (const ExchangeArc& a : g.Arcs()) out.emplace_back(a.from, a.to);
  return out;
}

TEST(Overdemandedness, Values) {
  const Instance inst = ValuationChange(1);
  EXPECT_EQ(Overdemandedness(inst, PriceVector(3), ItemSet::Of({1, 2})), 1);
  EXPECT_EQ(Overdemandedness(inst, PriceVector(3), ItemSet()), 0);
  EXPECT_EQ(Underdemandedness(inst, PriceVector(3), ItemSet()), 0);
  const Instance a3 = CoveringNotLattice();
  EXPECT_EQ(Underdemandedness(a3, PriceVector{7, 7, 7}, ItemSet::Of({0, 1})), 2);
}

TEST(ExchangeGraph, RecordedAnswersGiveTheRecordedArcs) {
  const auto w = testing::RecordedWeights();
  int64_t queries = 0;
  const ExchangeGraph g = BuildExchangeGraph(
      Bundle{2, 2, 2, 2, 2, 2}, RecordedAllocation(), DemandSide::kMinimal,
      [&](int i, int e, int f) {
        auto it = w.find({i, e, f});
        return it == w.end() ? int64_t{0} : it->second;
      },
      &queries);
  EXPECT_EQ(ArcPairs(g), testing::RecordedArcs());
  EXPECT_EQ(g.ArcCount(), 9);
  EXPECT_LE(queries, 3 * 6 * 6);
  EXPECT_TRUE(g.HasArc(3, 0));  // Blue
  EXPECT_TRUE(g.HasArc(2, 0));  // Red
  EXPECT_TRUE(g.HasArc(0, 4));  // Green
  EXPECT_EQ(g.ReachingInto(ItemSet::Of({0, 1})), ItemSet::Of({0, 1, 2, 3}));
  // No path from the undersold item to an oversold one.
  EXPECT_FALSE(g.ReachableFrom(ItemSet::Of({5})).Contains(0));
  EXPECT_FALSE(g.ReachableFrom(ItemSet::Of({5})).Contains(1));
}

TEST(ExchangeGraph, RealizableMarketAtRecordedAllocation) {
  const Instance inst = ExchangeGraphMarket();
  OracleCounters c;
  const ExchangeGraph g =
      BuildExchangeGraph(inst, PriceVector(6), RecordedAllocation(), DemandSide::kMinimal, &c);
  auto expected = testing::RecordedArcs();
  expected.emplace_back(2, 4);  // forced by exchangeability of Green's demand set
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(ArcPairs(g), expected);
  EXPECT_EQ(g.ReachingInto(ItemSet::Of({0, 1})), ItemSet::Of({0, 1, 2, 3}));
  EXPECT_LE(c.exo_calls, 3 * 6 * 6);
}

TEST(ExchangeGraph, EmptyAllocationHasNoArcs) {
  const Instance inst = ValuationChange(1);
  const ExchangeGraph g =
      BuildExchangeGraph(inst, PriceVector(3), {Bundle(3), Bundle(3), Bundle(3)}, DemandSide::kMinimal);
  EXPECT_EQ(g.ArcCount(), 0);
}

TEST(MinMaxOverdemanded, RealizableMarket) {
  const Instance inst = ExchangeGraphMarket();
  const DemandReport r = MinMaxOverdemanded(inst, PriceVector(6));
  EXPECT_EQ(r.set, ItemSet::Of({0, 1, 2, 3}));
  EXPECT_EQ(BruteMinMaxSet(inst, PriceVector(6), DemandKind::kOverdemanded), r.set);
  EXPECT_EQ(r.magnitude, BruteOverdemandedness(inst, PriceVector(6), r.set));
}

TEST(MinMaxOverdemanded, UnitDemandMarket) {
  const Instance inst = ValuationChange(1);
  const DemandReport r = MinMaxOverdemanded(inst, PriceVector(3));
  EXPECT_EQ(r.set, ItemSet::Of({1, 2}));
  EXPECT_EQ(r.magnitude, 1);
  EXPECT_TRUE(MinMaxOverdemanded(inst, PriceVector(3, 10)).set.Empty());
}

TEST(MinMaxUnderdemanded, Cases) {
  const Instance a3 = CoveringNotLattice();
  // Two known-SGS-free table buyers: the routine still runs on them.
  const ItemSet brute = BruteMinMaxSet(a3, PriceVector{7, 7, 7}, DemandKind::kUnderdemanded);
  EXPECT_TRUE(ItemSet::Of({0, 1}).IsSubsetOf(brute));
  const Instance inst = ValuationChange(1);
  EXPECT_TRUE(MinMaxUnderdemanded(inst, PriceVector{0, 1, 1}).set.Empty());
  const Instance all(Bundle{1, 1}, {Valuation::MakeAdditive({3, 3}), Valuation::MakeAdditive({2, 2})});
  EXPECT_TRUE(MinMaxUnderdemanded(all, PriceVector(2)).set.Empty());
}

TEST(Predicates, CoveringJoinFixture) {
  const Instance a3 = CoveringNotLattice();
  EXPECT_TRUE(IsCovering(a3, PriceVector{6, 7, 7}));
  EXPECT_FALSE(IsCovering(a3, PriceVector{7, 7, 7}));
  EXPECT_TRUE(IsCovering(a3, PriceVector{6, 7, 7}, Route::kDefinitional));
  EXPECT_FALSE(IsCovering(a3, PriceVector{7, 7, 7}, Route::kDefinitional));
}

TEST(Predicates, UnitDemandMarket) {
  const Instance inst = ValuationChange(1);
  EXPECT_TRUE(IsWalrasian(inst, PriceVector{0, 1, 1}));
  EXPECT_TRUE(IsPacking(inst, PriceVector(3, 100)));
  EXPECT_FALSE(IsCovering(inst, PriceVector(3, 100)));
  EXPECT_FALSE(IsPacking(inst, PriceVector(3)));
}

TEST(Predicates, RoutesAgreeOnCorpus) {
  for (const Instance& inst : testing::Corpus()) {
    for (int64_t price = 0; price <= 3; ++price) {
      const PriceVector p(inst.item_count(), price);
      EXPECT_EQ(IsPacking(inst, p, Route::kMinMax), IsPacking(inst, p, Route::kDefinitional));
      EXPECT_EQ(IsCovering(inst, p, Route::kMinMax), IsCovering(inst, p, Route::kDefinitional));
      EXPECT_EQ(IsWalrasian(inst, p, Route::kMinMax), IsWalrasian(inst, p, Route::kDefinitional));
    }
  }
}

TEST(Lyapunov, Values) {
  const Instance inst = ValuationChange(1);
  EXPECT_EQ(Lyapunov(inst, PriceVector(3)), 5);
  EXPECT_EQ(Lyapunov(inst, PriceVector{0, 1, 1}), 4);
  for (const Instance& c : testing::Corpus()) {
    int64_t total = 0;
    for (int i = 0; i < c.buyer_count(); ++i) total += c.valuation(i).Value(c.supply());
    EXPECT_EQ(Lyapunov(c, PriceVector(c.item_count())), total);
  }
}

// L(p + chi_S) - L(p) = -od(S) and L(p - chi_S) - L(p) = -ud(S) for every S.
TEST(Lyapunov, DifferenceIdentitiesOnCorpus) {
  int64_t checked = 0;
  for (const Instance& inst : testing::Corpus()) {
    const int m = inst.item_count();
    for (int64_t price = 1; price <= 2; ++price) {
      PriceVector p(m, price);
      p[0] = 0;
      const int64_t base = Lyapunov(inst, p);
      for (uint64_t mask = 1; mask < (uint64_t{1} << m); ++mask) {
        const ItemSet s = ItemSet::FromMask(mask);
        EXPECT_EQ(Lyapunov(inst, p.Shifted(s, 1)) - base, -BruteOverdemandedness(inst, p, s));
        bool positive = true;
        for (int e : s.Items()) positive = positive && p[e] > 0;
        if (positive) {
          EXPECT_EQ(Lyapunov(inst, p.Shifted(s, -1)) - base, -BruteUnderdemandedness(inst, p, s));
        }
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(MinMaxSets, CorpusAgreesWithBruteForce) {
  DemandSetOptions opt;
  opt.solver.debug_checks = true;
  for (const Instance& inst : testing::Corpus()) {
    const int m = inst.item_count();
    for (int64_t price = 0; price <= 5; ++price) {
      PriceVector p(m, price);
      if (m > 1) p[m - 1] = price / 2;
      const DemandReport over = MinMaxOverdemanded(inst, p, nullptr, opt);
      EXPECT_EQ(over.set, BruteMinMaxSet(inst, p, DemandKind::kOverdemanded));
      const DemandReport under = MinMaxUnderdemanded(inst, p, nullptr, opt);
      EXPECT_EQ(under.set, BruteMinMaxSet(inst, p, DemandKind::kUnderdemanded));
      if (!over.set.Empty()) {
        EXPECT_EQ(over.magnitude, BruteOverdemandedness(inst, p, over.set));
      }
      if (!under.set.Empty()) {
        EXPECT_EQ(under.magnitude, BruteUnderdemandedness(inst, p, under.set));
      }
    }
  }
}

}  // namespace
}  // namespace gsmarket
