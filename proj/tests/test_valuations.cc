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
#include "gsmarket/error.h"
#include "gsmarket/generators.h"
#include "gsmarket/valuations.h"

namespace gsmarket {
namespace {

using testing::CoveringNotLattice;
using testing::ExchangeGraphMarket;
using testing::RecordedAllocation;
using testing::ValuationChange;

const Bundle kUnit3{1, 1, 1};

TEST(Value, UnitDemand) {
  const Valuation v = Valuation::MakeUnitDemand({2, 3, 0});
  EXPECT_EQ(v.Value(Bundle{1, 1, 0}), 3);
  EXPECT_EQ(v.Value(Bundle{0, 0, 0}), 0);
}

TEST(Value, Table) {
  const Instance inst = CoveringNotLattice();
  EXPECT_EQ(inst.valuation(0).Value(Bundle{1, 1, 0}), 14);
  EXPECT_EQ(inst.valuation(0).Value(Bundle{1, 1, 1}), 18);
}

TEST(Value, EmptyBundleIsZeroForEveryFamily) {
  Pcg32 rng(3);
  const Bundle box{2, 1, 2};
  for (Family f : {Family::kUnitDemand, Family::kAdditive, Family::kMatroidRank, Family::kOxs,
                   Family::kTable}) {
    for (int k = 0; k < 5; ++k)
      EXPECT_EQ(GenerateValuation(f, box, 9, rng).Value(Bundle(3)), 0) << FamilyName(f);
  }
}

TEST(Value, MatroidRankFamilies) {
  const Valuation uni = Valuation::MakeMatroidRank(UniformMatroid{2}, {5, 3, 4});
  EXPECT_EQ(uni.Value(Bundle{1, 1, 1}), 9);
  const Valuation part =
      Valuation::MakeMatroidRank(PartitionMatroid{{{0, 1}, {2}}, {1, 1}}, {5, 3, 4});
  EXPECT_EQ(part.Value(Bundle{1, 1, 1}), 9);
  EXPECT_EQ(part.Value(Bundle{1, 1, 0}), 5);
  // Triangle plus a loop: any two triangle edges are independent.
  const Valuation graphic = Valuation::MakeMatroidRank(
      GraphicMatroid{3, {{0, 1}, {1, 2}, {0, 2}, {1, 1}}}, {4, 5, 6, 9});
  EXPECT_EQ(graphic.Value(Bundle{1, 1, 1, 1}), 11);
}

TEST(Value, Oxs) {
  // Two right nodes; item 0 fits both, item 1 only node 0.
  const Valuation v = Valuation::MakeOxs(2, 2, {{0, 0, 5}, {0, 1, 2}, {1, 0, 4}});
  EXPECT_EQ(v.Value(Bundle{1, 1}), 6);
  EXPECT_EQ(v.Value(Bundle{2, 0}), 7);
  EXPECT_EQ(v.Value(Bundle{0, 2}), 4);
}

TEST(Value, TableRejectsNonMonotone) {
  EXPECT_THROW(Valuation::MakeTable(Bundle{1}, std::vector<int64_t>{0, -1}), MarketError);
  EXPECT_THROW(Valuation::MakeTable(Bundle{2}, std::vector<int64_t>{0, 3, 2}), MarketError);
  EXPECT_THROW(Valuation::MakeTable(Bundle{1}, std::vector<int64_t>{1, 3}), MarketError);
}

TEST(IndirectUtility, UnitDemandBuyer) {
  const Instance inst = ValuationChange(1);
  const IndirectUtility iu = ComputeIndirectUtility(inst.valuation(0), kUnit3, PriceVector{0, 1, 1});
  EXPECT_EQ(iu.value, 2);
  EXPECT_EQ(iu.min_size, 1);
  const IndirectUtility high =
      ComputeIndirectUtility(inst.valuation(0), kUnit3, PriceVector{4, 4, 4});
  EXPECT_EQ(high.value, 0);
  EXPECT_EQ(high.min_size, 0);
}

TEST(IndirectUtility, TableBuyer) {
  const Instance inst = CoveringNotLattice();
  const IndirectUtility iu =
      ComputeIndirectUtility(inst.valuation(0), kUnit3, PriceVector{6, 7, 7});
  EXPECT_EQ(iu.value, 1);
  EXPECT_EQ(iu.max_size, 2);
}

TEST(Demand, GreedyBundles) {
  const Instance inst = ValuationChange(1);
  EXPECT_EQ(Demand(inst.valuation(1), kUnit3, PriceVector{0, 1, 1}, DemandSide::kMinimal),
            (Bundle{0, 0, 0}));
  EXPECT_EQ(Demand(inst.valuation(0), kUnit3, PriceVector{0, 0, 0}, DemandSide::kMinimal),
            (Bundle{0, 1, 0}));
  const Instance a3 = CoveringNotLattice();
  EXPECT_EQ(Demand(a3.valuation(0), kUnit3, PriceVector{6, 7, 7}, DemandSide::kMaximal),
            (Bundle{1, 1, 0}));
}

TEST(Demand, CountsOneCall) {
  OracleCounters c;
  Demand(Valuation::MakeAdditive({1, 2}), Bundle{1, 1}, PriceVector{0, 0}, DemandSide::kMaximal, &c);
  EXPECT_EQ(c.do_calls, 1);
  EXPECT_EQ(c.exo_calls, 0);
}

TEST(ExchangeWeight, RecordedAnswers) {
  const Instance inst = ExchangeGraphMarket();
  const auto z = RecordedAllocation();
  const PriceVector p(6);
  EXPECT_EQ(ExchangeWeight(inst.valuation(1), inst.supply(), p, z[1], 2, 0, DemandSide::kMinimal), 2);
  EXPECT_EQ(ExchangeWeight(inst.valuation(2), inst.supply(), p, z[2], 3, 1, DemandSide::kMinimal), 1);
  EXPECT_EQ(ExchangeWeight(inst.valuation(1), inst.supply(), p, z[1], 4, 5, DemandSide::kMinimal), 1);
  // No units of f to give up.
  EXPECT_EQ(ExchangeWeight(inst.valuation(2), inst.supply(), p, z[2], 1, 0, DemandSide::kMinimal), 0);
}

TEST(TightSet, RecordedBlue) {
  const Instance inst = ExchangeGraphMarket();
  const auto z = RecordedAllocation();
  EXPECT_EQ(TightSet(inst.valuation(0), inst.supply(), PriceVector(6), z[0], 3, DemandSide::kMinimal),
            ItemSet::Of({0, 1, 2, 3}));
}

TEST(TightSet, Singleton) {
  // Additive buyer at p = 0: the demand set is the single bundle b.
  const Valuation v = Valuation::MakeAdditive({3, 1, 2});
  EXPECT_EQ(TightSet(v, kUnit3, PriceVector(3), kUnit3, 1, DemandSide::kMinimal), ItemSet::Of({1}));
}

// T(e, z) is the intersection of all tight sets containing e.
TEST(TightSet, MatchesEnumerationOnCorpusTables) {
  int checked = 0;
  for (const Instance& inst : testing::Corpus()) {
    const int m = inst.item_count();
    for (int i = 0; i < inst.buyer_count(); ++i) {
      const Valuation& v = inst.valuation(i);
      if (v.kind_name() != std::string("table")) continue;
      for (DemandSide side : {DemandSide::kMinimal, DemandSide::kMaximal}) {
        const PriceVector p(m, 1);
        const Bundle z = Demand(v, inst.supply(), p, side);
        for (int e = 0; e < m; ++e) {
          ItemSet expect = ItemSet::All(m);
          for (uint64_t mask = 0; mask < (uint64_t{1} << m); ++mask) {
            const ItemSet s = ItemSet::FromMask(mask);
            if (!s.Contains(e)) continue;
            if (z.Sum(s) == Rank(v, inst.supply(), p, s, side).rank) expect = expect & s;
          }
          EXPECT_EQ(TightSet(v, inst.supply(), p, z, e, side), expect);
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Rank, Values) {
  const Instance inst = ValuationChange(1);
  const Valuation& v = inst.valuation(0);
  const PriceVector p(3);
  EXPECT_EQ(Rank(v, kUnit3, p, ItemSet::Of({1}), DemandSide::kMinimal).rank, 1);
  EXPECT_EQ(Rank(v, kUnit3, p, ItemSet(), DemandSide::kMinimal).rank, 0);
  const IndirectUtility iu = ComputeIndirectUtility(v, kUnit3, PriceVector{0, 1, 1});
  EXPECT_EQ(Rank(v, kUnit3, PriceVector{0, 1, 1}, ItemSet::All(3), DemandSide::kMinimal).rank,
            iu.min_size);
  EXPECT_EQ(Rank(v, kUnit3, PriceVector{0, 1, 1}, ItemSet::All(3), DemandSide::kMaximal).rank,
            iu.max_size);
}

TEST(CheckMnatConcave, StructuredFamiliesPass) {
  Pcg32 rng(11);
  for (Family f : {Family::kUnitDemand, Family::kAdditive, Family::kMatroidRank, Family::kOxs}) {
    for (int k = 0; k < 20; ++k) {
      const int m = static_cast<int>(rng.Between(1, 4));
      Bundle box(m);
      for (int e = 0; e < m; ++e) box[e] = static_cast<int>(rng.Between(1, 2));
      const Valuation v = GenerateValuation(f, box, 8, rng);
      EXPECT_TRUE(CheckMnatConcave(v, box)) << FamilyName(f);
    }
  }
}

TEST(CheckMnatConcave, NonSgsFixturesFail) {
  EXPECT_FALSE(CheckMnatConcave(testing::NoWalrasian().valuation(0), kUnit3));
  EXPECT_FALSE(CheckMnatConcave(testing::PackingNotLattice().valuation(0), Bundle{1, 1, 1, 1}));
}

TEST(CheckMnatConcave, CertificationLeavesNonSgsUnknown) {
  const Valuation v = testing::NoWalrasian().valuation(0);
  const auto* t = v.As<Valuation::Table>();
  ASSERT_NE(t, nullptr);
  EXPECT_EQ(Valuation::MakeTable(t->box, t->values, true).sgs_status(), SgsStatus::kUnknown);
  const Valuation ok = Valuation::MakeTable(Bundle{1, 1}, {0, 1, 1, 1}, true);
  EXPECT_EQ(ok.sgs_status(), SgsStatus::kCertified);
}

TEST(CheckMConvex, Cases) {
  EXPECT_FALSE(CheckMConvex({Bundle{1, 0}, Bundle{0, 0}}));
  EXPECT_TRUE(CheckMConvex({Bundle{1, 0}}));
  EXPECT_TRUE(CheckMConvex({Bundle{1, 0}, Bundle{0, 1}}));
}

TEST(CheckMConvex, DemandSetsOfCorpus) {
  for (const Instance& inst : testing::Corpus()) {
    const int m = inst.item_count();
    for (int i = 0; i < inst.buyer_count(); ++i) {
      for (int64_t price = 0; price <= 3; ++price) {
        const auto d = EnumerateDemandSets(inst.valuation(i), inst.supply(), PriceVector(m, price));
        EXPECT_TRUE(CheckMConvex(d.minimal));
        EXPECT_TRUE(CheckMConvex(d.maximal));
        EXPECT_TRUE(d.size_filters_agree);
      }
    }
  }
}

TEST(Truncate, Values) {
  const Valuation v = Valuation::MakeAdditive({5, 4});
  EXPECT_EQ(Truncate(v, 1).Value(Bundle{1, 1}), 5);
  EXPECT_EQ(Truncate(v, 0).Value(Bundle{1, 1}), 0);
  const Valuation u = Valuation::MakeMatroidRank(UniformMatroid{2}, {3, 1, 2});
  const Bundle box{2, 1, 2};
  ForEachBundle(box, [&](const Bundle& z) { EXPECT_EQ(Truncate(u, 5).Value(z), u.Value(z)); });
}

TEST(Truncate, PreservesMnatConcavity) {
  Pcg32 rng(5);
  for (int k = 0; k < 30; ++k) {
    const Bundle box{2, 1, 2};
    const Valuation v = GenerateValuation(Family::kMixed, box, 8, rng);
    for (int cap = 0; cap <= 5; ++cap) EXPECT_TRUE(CheckMnatConcave(Truncate(v, cap), box));
  }
}

TEST(CopyToUnitSupply, Projection) {
  const Instance inst(Bundle{2, 1}, {Valuation::MakeAdditive({3, 1})});
  const CopiedInstance c = CopyToUnitSupply(inst);
  EXPECT_EQ(c.projection, (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(c.instance.supply(), (Bundle{1, 1, 1}));
  EXPECT_EQ(c.instance.valuation(0).Value(Bundle{1, 1, 0}), 6);
  const Instance unit = ValuationChange(1);
  const CopiedInstance same = CopyToUnitSupply(unit);
  EXPECT_EQ(same.instance, unit);
  EXPECT_EQ(same.projection, (std::vector<int>{0, 1, 2}));
}

TEST(Instance, Validation) {
  EXPECT_THROW(Instance(Bundle{0}, {Valuation::MakeAdditive({1})}), MarketError);
  EXPECT_THROW(Instance(Bundle{1}, {}), MarketError);
  EXPECT_THROW(Instance(Bundle{1, 1}, {Valuation::MakeAdditive({1})}), MarketError);
  EXPECT_THROW(Instance(Bundle{1}, {Valuation::MakeAdditive({1})}, std::vector<int>{-1}),
               MarketError);
}

}  // namespace
}  // namespace gsmarket
