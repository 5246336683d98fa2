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

#include "gsmarket/demand_sets.h"

#include <deque>

#include "gsmarket/error.h"

namespace gsmarket {

void ExchangeGraph::AddArc(int from, int to, int buyer) {
  GSM_CHECK(from != to, "self-loop");
  if (buyers_.empty()) buyers_.assign(m_, std::vector<std::vector<int>>(m_));
  out_[from] |= uint64_t{1} << to;
  in_[to] |= uint64_t{1} << from;
  buyers_[from][to].push_back(buyer);
}

namespace {

ItemSet Bfs(const std::vector<uint64_t>& adj, ItemSet start) {
  ItemSet seen = start;
  std::deque<int> queue;
  for (int e : start.Items()) queue.push_back(e);
  while (!queue.empty()) {
    int e = queue.front();
    queue.pop_front();
    for (int f : ItemSet::FromMask(adj[e] & ~seen.mask()).Items()) {
      seen.Insert(f);
      queue.push_back(f);
    }
  }
  return seen;
}

}  // namespace

ItemSet ExchangeGraph::ReachingInto(ItemSet targets) const { return Bfs(in_, targets); }
ItemSet ExchangeGraph::ReachableFrom(ItemSet sources) const { return Bfs(out_, sources); }

std::vector<ExchangeArc> ExchangeGraph::Arcs() const {
  std::vector<ExchangeArc> arcs;
  for (int e = 0; e < m_; ++e)
    for (int f : ItemSet::FromMask(out_[e]).Items()) arcs.push_back({e, f, buyers_[e][f]});
  return arcs;
}

int ExchangeGraph::ArcCount() const {
  int c = 0;
  for (uint64_t x : out_) c += std::popcount(x);
  return c;
}

ExchangeGraph BuildExchangeGraph(const Bundle& supply, const std::vector<Bundle>& z,
                                 DemandSide side, const WeightQuery& weight, int64_t* queries) {
  const int m = supply.size();
  ExchangeGraph g(m, side);
  for (size_t i = 0; i < z.size(); ++i)
    for (int e = 0; e < m; ++e) {
      if (z[i][e] >= supply[e]) continue;
      for (int f = 0; f < m; ++f) {
        if (f == e || z[i][f] == 0) continue;
        if (queries) ++*queries;
        if (weight(static_cast<int>(i), e, f) > 0) g.AddArc(e, f, static_cast<int>(i));
      }
    }
  return g;
}

ExchangeGraph BuildExchangeGraph(const Instance& inst, const PriceVector& p,
                                 const std::vector<Bundle>& z, DemandSide side,
                                 OracleCounters* counters) {
  std::vector<BuyerOracle> oracles;
  oracles.reserve(inst.buyer_count());
  for (int i = 0; i < inst.buyer_count(); ++i)
    oracles.emplace_back(inst.valuation(i), inst.supply(), p, side, counters);
  return BuildExchangeGraph(inst.supply(), z, side, [&](int i, int e, int f) {
    return oracles[i].Weight(z[i], e, f);
  });
}

namespace {

SumSolution Solve(const Instance& inst, const PriceVector& p, DemandSide side,
                  OracleCounters* counters, const DemandSetOptions& options) {
  return SolvePolymatroidSum(inst, p, side, DefaultMode(inst), counters, options.solver);
}

}  // namespace

DemandReport MinMaxOverdemanded(const Instance& inst, const PriceVector& p,
                                OracleCounters* counters, const DemandSetOptions& options) {
  DemandReport r;
  r.kind = DemandKind::kOverdemanded;
  r.witness = Solve(inst, p, DemandSide::kMinimal, counters, options);
  int64_t demanded = 0;
  for (const Bundle& z : r.witness.bundles) demanded += z.Norm();
  r.magnitude = demanded - r.witness.value;
  ItemClassification c = ClassifyTotals(r.witness.totals, inst.supply());
  if (c.oversold.Empty()) {
    GSM_CHECK(r.magnitude == 0, "positive od without oversold items");
    return r;
  }
  OracleCounters graph_counters;
  ExchangeGraph g = BuildExchangeGraph(inst, p, r.witness.bundles, DemandSide::kMinimal,
                                       &graph_counters);
  r.witness.counters.oracle += graph_counters;
  if (counters) *counters += graph_counters;
  r.set = g.ReachingInto(c.oversold);
  const ItemSet rest = r.set.Complement(inst.item_count());
  for (int e : rest.Items())
    for (int f : r.set.Items()) GSM_CHECK(!g.HasArc(e, f), "arc into R from outside");
  if (options.solver.debug_checks)
    GSM_CHECK((r.set & c.undersold).Empty(), "undersold item reaches an oversold one");
  GSM_CHECK(r.magnitude > 0, "oversold items but od = 0");
  return r;
}

DemandReport MinMaxUnderdemanded(const Instance& inst, const PriceVector& p,
                                 OracleCounters* counters, const DemandSetOptions& options) {
  DemandReport r;
  r.kind = DemandKind::kUnderdemanded;
  r.witness = Solve(inst, p, DemandSide::kMaximal, counters, options);
  r.magnitude = inst.supply().Norm() - r.witness.value;
  ItemClassification c = ClassifyTotals(r.witness.totals, inst.supply());
  if (c.undersold.Empty()) {
    GSM_CHECK(r.magnitude == 0, "positive ud without undersold items");
    return r;
  }
  OracleCounters graph_counters;
  ExchangeGraph g = BuildExchangeGraph(inst, p, r.witness.bundles, DemandSide::kMaximal,
                                       &graph_counters);
  r.witness.counters.oracle += graph_counters;
  if (counters) *counters += graph_counters;
  r.set = g.ReachableFrom(c.undersold);
  const ItemSet rest = r.set.Complement(inst.item_count());
  for (int e : r.set.Items())
    for (int f : rest.Items()) GSM_CHECK(!g.HasArc(e, f), "arc leaves the reachable set");
  GSM_CHECK(r.magnitude > 0, "undersold items but ud = 0");
  return r;
}

int64_t Overdemandedness(const Instance& inst, const PriceVector& p, ItemSet s,
                         int64_t max_points) {
  int64_t od = -inst.supply().Sum(s);
  for (int i = 0; i < inst.buyer_count(); ++i)
    od += Rank(inst.valuation(i), inst.supply(), p, s, DemandSide::kMinimal, max_points).theta;
  return od;
}

int64_t Underdemandedness(const Instance& inst, const PriceVector& p, ItemSet s,
                          int64_t max_points) {
  int64_t ud = inst.supply().Sum(s);
  for (int i = 0; i < inst.buyer_count(); ++i)
    ud -= Rank(inst.valuation(i), inst.supply(), p, s, DemandSide::kMaximal, max_points).rank;
  return ud;
}

namespace {

bool UseMinMax(const Instance& inst, Route route) {
  if (route == Route::kMinMax) return true;
  if (route == Route::kDefinitional) return false;
  return inst.AllSgsKnown();
}

bool Definitional(const Instance& inst, const PriceVector& p, AllocationKind kind) {
  return FindAllocation(inst, p, kind).has_value();
}

}  // namespace

bool IsPacking(const Instance& inst, const PriceVector& p, Route route,
               OracleCounters* counters) {
  if (!UseMinMax(inst, route)) return Definitional(inst, p, AllocationKind::kPacking);
  return MinMaxOverdemanded(inst, p, counters).set.Empty();
}

bool IsCovering(const Instance& inst, const PriceVector& p, Route route,
                OracleCounters* counters) {
  if (!UseMinMax(inst, route)) return Definitional(inst, p, AllocationKind::kCovering);
  return MinMaxUnderdemanded(inst, p, counters).set.Empty();
}

bool IsWalrasian(const Instance& inst, const PriceVector& p, Route route,
                 OracleCounters* counters) {
  if (!UseMinMax(inst, route)) return Definitional(inst, p, AllocationKind::kWalrasian);
  return IsPacking(inst, p, Route::kMinMax, counters) &&
         IsCovering(inst, p, Route::kMinMax, counters);
}

int64_t Lyapunov(const Instance& inst, const PriceVector& p) {
  int64_t l = p.Dot(inst.supply());
  for (int i = 0; i < inst.buyer_count(); ++i)
    l += ComputeIndirectUtility(inst.valuation(i), inst.supply(), p).value;
  return l;
}

}  // namespace gsmarket
