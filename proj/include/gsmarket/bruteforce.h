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

#ifndef GSMARKET_BRUTEFORCE_H_
#define GSMARKET_BRUTEFORCE_H_

// Exhaustive oracles for desk-scale instances. Nothing here calls the
// push-relabel solver, the exchange oracle or the greedy demand oracle.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsmarket/core_model.h"
#include "gsmarket/instance.h"
#include "gsmarket/valuations.h"

namespace gsmarket {

struct EnumerationBudget {
  int64_t max_bundles = 4096;      // |[0,b]|
  int64_t max_price = 64;          // price grid side
  int64_t max_subsets = 65536;     // 2^m
  int64_t max_grid_points = 1 << 20;
  int64_t max_tuples = 1 << 20;    // demand-set tuples
};

enum class DemandKind { kOverdemanded, kUnderdemanded };
const char* DemandKindName(DemandKind kind);

struct DemandEnumeration {
  std::vector<Bundle> all;       // D(p)
  std::vector<Bundle> minimal;   // componentwise minimal members
  std::vector<Bundle> maximal;   // componentwise maximal members
  // Cardinality filters agree with the componentwise ones.
  bool size_filters_agree = true;
};

DemandEnumeration EnumerateDemandSets(const Valuation& v, const Bundle& box,
                                      const PriceVector& p,
                                      const EnumerationBudget& budget = {});
std::vector<Bundle> EnumerateDemand(const Valuation& v, const Bundle& box,
                                    const PriceVector& p, DemandSide side,
                                    const EnumerationBudget& budget = {});

struct BruteSumResult {
  int64_t primal = 0;
  std::vector<Bundle> witness;
  int64_t dual = 0;
  ItemSet dual_set;
};
BruteSumResult BrutePolymatroidSum(const Instance& inst, const PriceVector& p,
                                   DemandSide side, const EnumerationBudget& budget = {});

int64_t BruteOverdemandedness(const Instance& inst, const PriceVector& p, ItemSet s,
                              const EnumerationBudget& budget = {});
int64_t BruteUnderdemandedness(const Instance& inst, const PriceVector& p, ItemSet s,
                               const EnumerationBudget& budget = {});
// Intersection of all maximizers of od (or ud); empty when the max is <= 0.
ItemSet BruteMinMaxSet(const Instance& inst, const PriceVector& p, DemandKind kind,
                       const EnumerationBudget& budget = {});

enum class AllocationKind { kPacking, kCovering, kWalrasian };
// Definitional search over all preferred-bundle tuples.
std::optional<std::vector<Bundle>> FindAllocation(const Instance& inst, const PriceVector& p,
                                                  AllocationKind kind,
                                                  const EnumerationBudget& budget = {});

struct BruteWalrasianResult {
  std::vector<PriceVector> prices;  // sorted
  std::optional<PriceVector> minimal;  // meet of all members
  std::optional<PriceVector> maximal;  // join of all members
  bool lattice_closed = true;
  int64_t grid_max = 0;
};
BruteWalrasianResult BruteWalrasian(const Instance& inst,
                                    const EnumerationBudget& budget = {});

struct ExtremesReport {
  bool ok = true;
  std::vector<std::string> violations;
  std::vector<PriceVector> extremes;  // minimal packing / maximal covering points
  int64_t points = 0;                 // packing / covering grid points
};
// pairwise: also test closure of the packing (covering) grid set under meet
// (join) over all pairs.
ExtremesReport CheckPackingExtremes(const Instance& inst, const EnumerationBudget& budget = {},
                                    bool pairwise = false);
ExtremesReport CheckCoveringExtremes(const Instance& inst, const EnumerationBudget& budget = {},
                                     bool pairwise = false);

struct Perturbation {
  enum Kind { kSupplyDecrease, kDemandDecrease } kind;
  int index;  // item or buyer
};

struct MonotonicityVerdict {
  bool applicable = true;  // false when the perturbation is void
  bool holds = true;
  PriceVector min_before, max_before, min_after, max_after;
  std::vector<int> compared_items;  // original indices
  std::string detail;
};
MonotonicityVerdict MonotonicityHarness(const Instance& inst, Perturbation perturbation,
                                        const EnumerationBudget& budget = {});

// The perturbed instance itself; items with zero supply are dropped.
// kept receives the original index of every surviving item.
Instance PerturbInstance(const Instance& inst, Perturbation perturbation,
                         std::vector<int>* kept = nullptr);

}  // namespace gsmarket

#endif  // GSMARKET_BRUTEFORCE_H_
