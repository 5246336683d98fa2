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

#ifndef GSMARKET_VALUATIONS_H_
#define GSMARKET_VALUATIONS_H_

#include <cstdint>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "gsmarket/core_model.h"

namespace gsmarket {

enum class DemandSide { kMinimal, kMaximal };
const char* DemandSideName(DemandSide side);

struct OracleCounters {
  int64_t do_calls = 0;
  int64_t exo_calls = 0;
  int64_t value_calls = 0;

  OracleCounters& operator+=(const OracleCounters& o) {
    do_calls += o.do_calls;
    exo_calls += o.exo_calls;
    value_calls += o.value_calls;
    return *this;
  }
  OracleCounters operator-(const OracleCounters& o) const {
    return {do_calls - o.do_calls, exo_calls - o.exo_calls,
            value_calls - o.value_calls};
  }
  bool operator==(const OracleCounters&) const = default;
};

struct UniformMatroid {
  int rank = 0;
  bool operator==(const UniformMatroid&) const = default;
};
struct PartitionMatroid {
  std::vector<std::vector<int>> blocks;
  std::vector<int> caps;
  bool operator==(const PartitionMatroid&) const = default;
};
// Item e is the edge edges[e]; a self-loop is dependent on its own.
struct GraphicMatroid {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  bool operator==(const GraphicMatroid&) const = default;
};
using MatroidDesc = std::variant<UniformMatroid, PartitionMatroid, GraphicMatroid>;

bool MatroidIndependent(const MatroidDesc& matroid, ItemSet s);
int MatroidRank(const MatroidDesc& matroid, ItemSet s);

struct OxsEdge {
  int item = 0;
  int right = 0;
  int64_t weight = 0;
  bool operator==(const OxsEdge&) const = default;
};

class Valuation;

enum class SgsStatus { kByConstruction, kCertified, kUnknown };

// Immutable, cheap to copy. The value oracle is the only primitive; the
// demand and exchange oracles below are built on top of it.
class Valuation {
 public:
  struct UnitDemand {
    std::vector<int64_t> weights;
    bool operator==(const UnitDemand&) const = default;
  };
  struct Additive {
    std::vector<int64_t> weights;
    bool operator==(const Additive&) const = default;
  };
  // max <w, y> over independent 0/1 vectors y <= z. Units beyond the first
  // behave as parallel copies.
  struct MatroidRank {
    MatroidDesc matroid;
    std::vector<int64_t> weights;
    bool operator==(const MatroidRank&) const = default;
  };
  struct Oxs {
    int item_count = 0;
    int right_size = 0;
    std::vector<OxsEdge> edges;
    bool operator==(const Oxs&) const = default;
  };
  struct Table {
    Bundle box;
    std::vector<int64_t> values;  // indexed by BoxIndex
    bool operator==(const Table&) const = default;
  };
  struct Truncated;
  struct CopyProjected;

  static Valuation MakeUnitDemand(std::vector<int64_t> w);
  static Valuation MakeAdditive(std::vector<int64_t> w);
  static Valuation MakeMatroidRank(MatroidDesc matroid, std::vector<int64_t> w);
  static Valuation MakeOxs(int item_count, int right_size, std::vector<OxsEdge> edges);
  // Validates v(0) = 0 and monotonicity. With certify=true also runs the
  // M-natural concavity check and records the outcome.
  static Valuation MakeTable(Bundle box, std::vector<int64_t> values,
                             bool certify = false);
  static Valuation MakeTable(const Bundle& box,
                             const std::function<int64_t(const Bundle&)>& fn,
                             bool certify = false);
  static Valuation MakeTruncated(Valuation inner, int cap);
  // projection[e'] is the inner item for outer item e'; several outer items
  // may share an inner item.
  static Valuation MakeCopyProjected(Valuation inner, std::vector<int> projection);

  int64_t Value(const Bundle& z, OracleCounters* counters = nullptr) const;
  int item_count() const;
  SgsStatus sgs_status() const;
  const char* kind_name() const;

  template <typename T>
  const T* As() const;

  bool operator==(const Valuation& o) const;

 private:
  struct Rep;
  explicit Valuation(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

struct Valuation::Truncated {
  Valuation inner;
  int cap = 0;
  bool operator==(const Truncated&) const = default;
};
struct Valuation::CopyProjected {
  Valuation inner;
  std::vector<int> projection;
  bool operator==(const CopyProjected&) const = default;
};

// ---- demand and exchange oracles ----

struct IndirectUtility {
  int64_t value = 0;  // V(p)
  int min_size = 0;
  int max_size = 0;
};

IndirectUtility ComputeIndirectUtility(const Valuation& v, const Bundle& box,
                                       const PriceVector& p,
                                       OracleCounters* counters = nullptr);

// The DO oracle: greedy, lowest index on ties. Counts one do_call.
Bundle Demand(const Valuation& v, const Bundle& box, const PriceVector& p,
              DemandSide side, OracleCounters* counters = nullptr);

int64_t Utility(const Valuation& v, const PriceVector& p, const Bundle& z,
                OracleCounters* counters = nullptr);

// Membership in the demand set D(p) restricted to the side's cardinality.
bool InDemandSet(const Valuation& v, const Bundle& box, const PriceVector& p,
                 DemandSide side, const IndirectUtility& iu, const Bundle& z,
                 OracleCounters* counters = nullptr);

// A polymatroid base set B accessed through one starting member and the
// exchange weights w(e,f) = max{a : z - a*chi_f + a*chi_e in B}.
class BaseOracle {
 public:
  virtual ~BaseOracle() = default;
  virtual Bundle Initial() = 0;
  virtual int64_t Weight(const Bundle& z, int e, int f) = 0;
  // Uncounted; used by invariant checks.
  virtual int64_t PeekWeight(const Bundle& z, int e, int f) const = 0;
};

// Oracle bundle for one buyer at fixed prices: caches V(p) and the side's
// cardinality. Every Weight() call is one ExO query.
class BuyerOracle : public BaseOracle {
 public:
  BuyerOracle(const Valuation& v, const Bundle& box, const PriceVector& p,
              DemandSide side, OracleCounters* counters = nullptr,
              bool debug = false);

  Bundle Demand();
  Bundle Initial() override { return Demand(); }
  // w(e,f) by binary search on alpha. debug: also linear scan, verify z.
  int64_t Weight(const Bundle& z, int e, int f) override;
  int64_t PeekWeight(const Bundle& z, int e, int f) const override;
  ItemSet TightSet(const Bundle& z, int e);
  bool Contains(const Bundle& z) const;

  const IndirectUtility& indirect_utility() const { return iu_; }
  DemandSide side() const { return side_; }

 private:
  int64_t Search(const Bundle& z, int e, int f, OracleCounters* c) const;

  Valuation v_;
  Bundle box_;
  PriceVector p_;
  DemandSide side_;
  OracleCounters* counters_;
  bool debug_;
  IndirectUtility iu_;
};

int64_t ExchangeWeight(const Valuation& v, const Bundle& box, const PriceVector& p,
                       const Bundle& z, int e, int f, DemandSide side,
                       OracleCounters* counters = nullptr);
ItemSet TightSet(const Valuation& v, const Bundle& box, const PriceVector& p,
                 const Bundle& z, int e, DemandSide side,
                 OracleCounters* counters = nullptr);

// ---- enumeration-based checks (small boxes only) ----

// All z in [0,box] with u(z) = V(p). Throws kEnumerationLimit past max_points.
std::vector<Bundle> EnumeratePreferred(const Valuation& v, const Bundle& box,
                                       const PriceVector& p,
                                       int64_t max_points = 4096);

struct RankValue {
  int64_t rank = 0;   // rho(S)
  int64_t theta = 0;  // rho(E) - rho(E \ S)
};
RankValue Rank(const Valuation& v, const Bundle& box, const PriceVector& p,
               ItemSet s, DemandSide side, int64_t max_points = 4096);

bool CheckMnatConcave(const Valuation& v, const Bundle& box,
                      int64_t max_points = 4096);
bool CheckMConvex(const std::vector<Bundle>& set);

Valuation Truncate(const Valuation& v, int cap);

}  // namespace gsmarket

#endif  // GSMARKET_VALUATIONS_H_
