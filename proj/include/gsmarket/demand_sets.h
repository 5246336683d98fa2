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

#ifndef GSMARKET_DEMAND_SETS_H_
#define GSMARKET_DEMAND_SETS_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "gsmarket/bruteforce.h"
#include "gsmarket/core_model.h"
#include "gsmarket/instance.h"
#include "gsmarket/polymatroid_sum.h"
#include "gsmarket/valuations.h"

namespace gsmarket {

struct ExchangeArc {
  int from = 0;
  int to = 0;
  std::vector<int> buyers;  // buyers with w_i(from, to) > 0
};

class ExchangeGraph {
 public:
  ExchangeGraph(int item_count, DemandSide side)
      : m_(item_count), side_(side), out_(item_count, 0), in_(item_count, 0) {}

  void AddArc(int from, int to, int buyer);
  bool HasArc(int from, int to) const { return (out_[from] >> to) & 1; }
  // Items with a directed path into targets (targets included).
  ItemSet ReachingInto(ItemSet targets) const;
  // Items reachable from sources (sources included).
  ItemSet ReachableFrom(ItemSet sources) const;

  int item_count() const { return m_; }
  DemandSide side() const { return side_; }
  std::vector<ExchangeArc> Arcs() const;  // sorted by (from, to)
  int ArcCount() const;

 private:
  int m_;
  DemandSide side_;
  std::vector<uint64_t> out_;
  std::vector<uint64_t> in_;
  std::vector<std::vector<std::vector<int>>> buyers_;
};

// (buyer, e, f) -> w_buyer(e, f).
using WeightQuery = std::function<int64_t(int, int, int)>;

// One query per (i, e, f) with z_i(f) > 0 and z_i(e) < b(e).
ExchangeGraph BuildExchangeGraph(const Bundle& supply, const std::vector<Bundle>& z,
                                 DemandSide side, const WeightQuery& weight,
                                 int64_t* queries = nullptr);
ExchangeGraph BuildExchangeGraph(const Instance& inst, const PriceVector& p,
                                 const std::vector<Bundle>& z, DemandSide side,
                                 OracleCounters* counters = nullptr);

struct DemandReport {
  ItemSet set;  // empty: no over/underdemanded set
  DemandKind kind = DemandKind::kOverdemanded;
  int64_t magnitude = 0;
  SumSolution witness;
};

struct DemandSetOptions {
  SolverOptions solver;
};

DemandReport MinMaxOverdemanded(const Instance& inst, const PriceVector& p,
                                OracleCounters* counters = nullptr,
                                const DemandSetOptions& options = {});
DemandReport MinMaxUnderdemanded(const Instance& inst, const PriceVector& p,
                                 OracleCounters* counters = nullptr,
                                 const DemandSetOptions& options = {});

// od and ud by the literal formulas, ranks from enumeration.
int64_t Overdemandedness(const Instance& inst, const PriceVector& p, ItemSet s,
                         int64_t max_points = 4096);
int64_t Underdemandedness(const Instance& inst, const PriceVector& p, ItemSet s,
                          int64_t max_points = 4096);

// kMinMax: through the over/underdemanded sets, valid for SGS buyers.
// kDefinitional: search over preferred-bundle tuples.
// kAuto: kMinMax when every buyer is known SGS, otherwise kDefinitional.
enum class Route { kAuto, kMinMax, kDefinitional };

bool IsPacking(const Instance& inst, const PriceVector& p, Route route = Route::kAuto,
               OracleCounters* counters = nullptr);
bool IsCovering(const Instance& inst, const PriceVector& p, Route route = Route::kAuto,
                OracleCounters* counters = nullptr);
bool IsWalrasian(const Instance& inst, const PriceVector& p, Route route = Route::kAuto,
                 OracleCounters* counters = nullptr);

// sum_i V_i(p) + <p, b>.
int64_t Lyapunov(const Instance& inst, const PriceVector& p);

}  // namespace gsmarket

#endif  // GSMARKET_DEMAND_SETS_H_
