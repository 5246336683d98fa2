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

#include "gsmarket/bruteforce.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "gsmarket/error.h"

namespace gsmarket {

const char* DemandKindName(DemandKind kind) {
  return kind == DemandKind::kOverdemanded ? "overdemanded" : "underdemanded";
}

namespace {

void Refuse(const std::string& what) { throw MarketError(ErrorCode::kEnumerationLimit, what); }

// Values of one valuation on every point of the box.
struct ValueTable {
  Bundle box;
  std::vector<Bundle> points;
  std::vector<int64_t> values;

  ValueTable(const Valuation& v, const Bundle& b, const EnumerationBudget& budget) : box(b) {
    if (BoxCount(box) > budget.max_bundles)
      Refuse("box has " + std::to_string(BoxCount(box)) + " bundles");
    ForEachBundle(box, [&](const Bundle& z) {
      points.push_back(z);
      values.push_back(v.Value(z));
    });
  }

  std::vector<Bundle> Preferred(const PriceVector& p) const {
    int64_t best = std::numeric_limits<int64_t>::min();
    std::vector<Bundle> out;
    for (size_t k = 0; k < points.size(); ++k) {
      int64_t u = values[k] - p.Dot(points[k]);
      if (u > best) {
        best = u;
        out.clear();
      }
      if (u == best) out.push_back(points[k]);
    }
    return out;
  }
};

bool Leq(const Bundle& a, const Bundle& b) {
  for (int e = 0; e < a.size(); ++e)
    if (a[e] > b[e]) return false;
  return true;
}

DemandEnumeration Classify(std::vector<Bundle> all) {
  DemandEnumeration d;
  d.all = std::move(all);
  int64_t lo = std::numeric_limits<int64_t>::max(), hi = -1;
  for (const Bundle& z : d.all) {
    lo = std::min(lo, z.Norm());
    hi = std::max(hi, z.Norm());
  }
  for (const Bundle& z : d.all) {
    bool is_min = true, is_max = true;
    for (const Bundle& y : d.all) {
      if (y == z) continue;
      if (Leq(y, z)) is_min = false;
      if (Leq(z, y)) is_max = false;
    }
    if (is_min) d.minimal.push_back(z);
    if (is_max) d.maximal.push_back(z);
    if (is_min != (z.Norm() == lo) || is_max != (z.Norm() == hi)) d.size_filters_agree = false;
  }
  return d;
}

std::vector<ValueTable> Tables(const Instance& inst, const EnumerationBudget& budget) {
  std::vector<ValueTable> t;
  for (int i = 0; i < inst.buyer_count(); ++i)
    t.emplace_back(inst.valuation(i), inst.supply(), budget);
  return t;
}

void CheckTuples(const std::vector<std::vector<Bundle>>& sets, const EnumerationBudget& budget) {
  double product = 1;
  for (const auto& s : sets) product *= static_cast<double>(s.size());
  if (product > static_cast<double>(budget.max_tuples))
    Refuse("too many demand tuples");
}

// Depth-first search for a tuple with totals inside [lower, upper].
bool SearchTuple(const std::vector<std::vector<Bundle>>& sets, const Bundle& lower,
                 const Bundle& upper, std::vector<Bundle>* out) {
  const int n = static_cast<int>(sets.size());
  const int m = lower.size();
  // reach[i][e]: the most of e that buyers i.. can still add.
  std::vector<std::vector<int>> reach(n + 1, std::vector<int>(m, 0));
  for (int i = n - 1; i >= 0; --i)
    for (int e = 0; e < m; ++e) {
      int best = 0;
      for (const Bundle& z : sets[i]) best = std::max(best, z[e]);
      reach[i][e] = reach[i + 1][e] + best;
    }
  Bundle t(m);
  std::vector<Bundle> chosen;
  std::function<bool(int)> go = [&](int i) {
    for (int e = 0; e < m; ++e)
      if (t[e] > upper[e] || t[e] + reach[i][e] < lower[e]) return false;
    if (i == n) return true;
    for (const Bundle& z : sets[i]) {
      for (int e = 0; e < m; ++e) t[e] += z[e];
      chosen.push_back(z);
      if (go(i + 1)) return true;
      chosen.pop_back();
      for (int e = 0; e < m; ++e) t[e] -= z[e];
    }
    return false;
  };
  if (!go(0)) return false;
  if (out) *out = chosen;
  return true;
}

std::vector<std::vector<Bundle>> SideSets(const Instance& inst, const PriceVector& p,
                                          DemandSide side, const EnumerationBudget& budget) {
  std::vector<std::vector<Bundle>> sets;
  for (int i = 0; i < inst.buyer_count(); ++i)
    sets.push_back(EnumerateDemand(inst.valuation(i), inst.supply(), p, side, budget));
  return sets;
}

int64_t RankOf(const std::vector<Bundle>& set, ItemSet s) {
  int64_t r = 0;
  for (const Bundle& z : set) r = std::max(r, z.Sum(s));
  return r;
}

void CheckSubsets(int m, const EnumerationBudget& budget) {
  if (m >= 63 || (int64_t{1} << m) > budget.max_subsets) Refuse("too many item subsets");
}

// Packing / covering / Walrasian flags on the price grid.
struct GridScan {
  Bundle side;  // grid box, every coordinate = grid_max
  int64_t grid_max = 0;
  std::vector<PriceVector> points;
  std::vector<char> packing, covering, walrasian;
};

GridScan ScanGrid(const Instance& inst, const EnumerationBudget& budget, bool need_pc) {
  GridScan g;
  g.grid_max = inst.MaxValue();
  const int m = inst.item_count();
  if (g.grid_max > budget.max_price)
    Refuse("price grid side " + std::to_string(g.grid_max) + " exceeds max_price");
  g.side = Bundle(std::vector<int>(m, static_cast<int>(g.grid_max)));
  if (BoxCount(g.side) > budget.max_grid_points) Refuse("too many grid points");
  std::vector<ValueTable> tables = Tables(inst, budget);
  const Bundle zero(m);
  const Bundle& b = inst.supply();
  Bundle big(m);
  for (int e = 0; e < m; ++e) big[e] = std::numeric_limits<int>::max() / 4;
  ForEachBundle(g.side, [&](const Bundle& q) {
    PriceVector p(std::vector<int64_t>(q.values().begin(), q.values().end()));
    std::vector<std::vector<Bundle>> sets;
    for (const ValueTable& t : tables) sets.push_back(t.Preferred(p));
    CheckTuples(sets, budget);
    g.points.push_back(p);
    g.walrasian.push_back(SearchTuple(sets, b, b, nullptr));
    if (need_pc) {
      g.packing.push_back(g.walrasian.back() || SearchTuple(sets, zero, b, nullptr));
      g.covering.push_back(g.walrasian.back() || SearchTuple(sets, b, big, nullptr));
    }
  });
  return g;
}

BruteWalrasianResult Summarize(const GridScan& g) {
  BruteWalrasianResult r;
  r.grid_max = g.grid_max;
  for (size_t k = 0; k < g.points.size(); ++k)
    if (g.walrasian[k]) r.prices.push_back(g.points[k]);
  if (r.prices.empty()) return r;
  PriceVector lo = r.prices.front(), hi = r.prices.front();
  for (const PriceVector& p : r.prices) {
    MeetJoin mj = MeetAndJoin(lo, p);
    lo = mj.meet;
    hi = MeetAndJoin(hi, p).join;
  }
  r.minimal = lo;
  r.maximal = hi;
  auto member = [&](const PriceVector& p) {
    Bundle q(p.size());
    for (int e = 0; e < p.size(); ++e) q[e] = static_cast<int>(p[e]);
    return g.walrasian[BoxIndex(q, g.side)] != 0;
  };
  for (size_t a = 0; a < r.prices.size() && r.lattice_closed; ++a)
    for (size_t c = a + 1; c < r.prices.size(); ++c) {
      MeetJoin mj = MeetAndJoin(r.prices[a], r.prices[c]);
      if (!member(mj.meet) || !member(mj.join)) {
        r.lattice_closed = false;
        break;
      }
    }
  return r;
}

}  // namespace

DemandEnumeration EnumerateDemandSets(const Valuation& v, const Bundle& box,
                                      const PriceVector& p, const EnumerationBudget& budget) {
  return Classify(ValueTable(v, box, budget).Preferred(p));
}

std::vector<Bundle> EnumerateDemand(const Valuation& v, const Bundle& box, const PriceVector& p,
                                    DemandSide side, const EnumerationBudget& budget) {
  DemandEnumeration d = EnumerateDemandSets(v, box, p, budget);
  return side == DemandSide::kMinimal ? d.minimal : d.maximal;
}

BruteSumResult BrutePolymatroidSum(const Instance& inst, const PriceVector& p, DemandSide side,
                                   const EnumerationBudget& budget) {
  const int m = inst.item_count();
  const int n = inst.buyer_count();
  CheckSubsets(m, budget);
  auto sets = SideSets(inst, p, side, budget);
  CheckTuples(sets, budget);
  const Bundle& b = inst.supply();
  BruteSumResult r;
  r.primal = -1;
  Bundle t(m);
  std::vector<Bundle> chosen;
  std::function<void(int)> go = [&](int i) {
    if (i == n) {
      int64_t val = 0;
      for (int e = 0; e < m; ++e) val += std::min(t[e], b[e]);
      if (val > r.primal) {
        r.primal = val;
        r.witness = chosen;
      }
      return;
    }
    for (const Bundle& z : sets[i]) {
      for (int e = 0; e < m; ++e) t[e] += z[e];
      chosen.push_back(z);
      go(i + 1);
      chosen.pop_back();
      for (int e = 0; e < m; ++e) t[e] -= z[e];
    }
  };
  go(0);
  r.dual = std::numeric_limits<int64_t>::max();
  for (uint64_t mask = 0; mask < (uint64_t{1} << m); ++mask) {
    ItemSet s = ItemSet::FromMask(mask);
    ItemSet rest = s.Complement(m);
    int64_t val = b.Sum(s);
    for (const auto& set : sets) val += RankOf(set, rest);
    if (val < r.dual) {
      r.dual = val;
      r.dual_set = s;
    }
  }
  return r;
}

int64_t BruteOverdemandedness(const Instance& inst, const PriceVector& p, ItemSet s,
                              const EnumerationBudget& budget) {
  const int m = inst.item_count();
  auto sets = SideSets(inst, p, DemandSide::kMinimal, budget);
  int64_t od = -inst.supply().Sum(s);
  for (const auto& set : sets)
    od += RankOf(set, ItemSet::All(m)) - RankOf(set, s.Complement(m));
  return od;
}

int64_t BruteUnderdemandedness(const Instance& inst, const PriceVector& p, ItemSet s,
                               const EnumerationBudget& budget) {
  auto sets = SideSets(inst, p, DemandSide::kMaximal, budget);
  int64_t ud = inst.supply().Sum(s);
  for (const auto& set : sets) ud -= RankOf(set, s);
  return ud;
}

ItemSet BruteMinMaxSet(const Instance& inst, const PriceVector& p, DemandKind kind,
                       const EnumerationBudget& budget) {
  const int m = inst.item_count();
  CheckSubsets(m, budget);
  const bool over = kind == DemandKind::kOverdemanded;
  auto sets = SideSets(inst, p, over ? DemandSide::kMinimal : DemandSide::kMaximal, budget);
  const ItemSet all = ItemSet::All(m);
  int64_t best = 0;
  ItemSet meet = all;
  for (uint64_t mask = 0; mask < (uint64_t{1} << m); ++mask) {
    ItemSet s = ItemSet::FromMask(mask);
    int64_t val;
    if (over) {
      val = -inst.supply().Sum(s);
      for (const auto& set : sets) val += RankOf(set, all) - RankOf(set, s.Complement(m));
    } else {
      val = inst.supply().Sum(s);
      for (const auto& set : sets) val -= RankOf(set, s);
    }
    if (val > best) {
      best = val;
      meet = s;
    } else if (val == best && best > 0) {
      meet = meet & s;
    }
  }
  return best > 0 ? meet : ItemSet();
}

std::optional<std::vector<Bundle>> FindAllocation(const Instance& inst, const PriceVector& p,
                                                  AllocationKind kind,
                                                  const EnumerationBudget& budget) {
  const int m = inst.item_count();
  std::vector<std::vector<Bundle>> sets;
  for (int i = 0; i < inst.buyer_count(); ++i)
    sets.push_back(ValueTable(inst.valuation(i), inst.supply(), budget).Preferred(p));
  CheckTuples(sets, budget);
  Bundle lower(m), upper(m);
  for (int e = 0; e < m; ++e) {
    lower[e] = kind == AllocationKind::kPacking ? 0 : inst.supply()[e];
    upper[e] = kind == AllocationKind::kCovering ? std::numeric_limits<int>::max() / 4
                                                 : inst.supply()[e];
  }
  std::vector<Bundle> out;
  if (!SearchTuple(sets, lower, upper, &out)) return std::nullopt;
  return out;
}

BruteWalrasianResult BruteWalrasian(const Instance& inst, const EnumerationBudget& budget) {
  return Summarize(ScanGrid(inst, budget, false));
}

namespace {

ExtremesReport CheckExtremes(const Instance& inst, const EnumerationBudget& budget,
                             bool pairwise, bool packing) {
  GridScan g = ScanGrid(inst, budget, true);
  BruteWalrasianResult w = Summarize(g);
  const std::vector<char>& flag = packing ? g.packing : g.covering;
  const char* name = packing ? "packing" : "covering";
  ExtremesReport r;
  std::vector<PriceVector> pts;
  for (size_t k = 0; k < g.points.size(); ++k)
    if (flag[k]) pts.push_back(g.points[k]);
  r.points = static_cast<int64_t>(pts.size());
  auto sum = [](const PriceVector& p) {
    return std::accumulate(p.values().begin(), p.values().end(), int64_t{0});
  };
  std::stable_sort(pts.begin(), pts.end(), [&](const PriceVector& a, const PriceVector& b) {
    return packing ? sum(a) < sum(b) : sum(a) > sum(b);
  });
  for (const PriceVector& p : pts) {
    bool dominated = false;
    for (const PriceVector& q : r.extremes)
      if (packing ? q.LessEq(p) : p.LessEq(q)) dominated = true;
    if (!dominated) r.extremes.push_back(p);
  }
  auto fail = [&](const std::string& s) {
    r.ok = false;
    r.violations.push_back(s);
  };
  if (r.extremes.size() != 1)
    fail(std::to_string(r.extremes.size()) + std::string(" ") +
         (packing ? "minimal packing" : "maximal covering") + " vectors");
  const std::optional<PriceVector>& ref = packing ? w.minimal : w.maximal;
  if (!ref) {
    fail("no Walrasian prices on the grid");
  } else {
    for (const PriceVector& p : pts) {
      bool ok = packing ? ref->LessEq(p) : p.LessEq(*ref);
      if (!ok) {
        fail(std::string(name) + " price " + p.ToString() + (packing ? " not >= " : " not <= ") +
             ref->ToString());
        break;
      }
    }
  }
  if (pairwise) {
    auto member = [&](const PriceVector& p) {
      Bundle q(p.size());
      for (int e = 0; e < p.size(); ++e) q[e] = static_cast<int>(p[e]);
      return flag[BoxIndex(q, g.side)] != 0;
    };
    bool done = false;
    for (size_t a = 0; a < pts.size() && !done; ++a)
      for (size_t c = a + 1; c < pts.size(); ++c) {
        MeetJoin mj = MeetAndJoin(pts[a], pts[c]);
        const PriceVector& x = packing ? mj.meet : mj.join;
        if (!member(x)) {
          fail(std::string(packing ? "meet" : "join") + " of " + name + " vectors " +
               pts[a].ToString() + " and " + pts[c].ToString() + " is " + x.ToString() +
               ", not " + name);
          done = true;
          break;
        }
      }
  }
  return r;
}

}  // namespace

ExtremesReport CheckPackingExtremes(const Instance& inst, const EnumerationBudget& budget,
                                    bool pairwise) {
  return CheckExtremes(inst, budget, pairwise, true);
}

ExtremesReport CheckCoveringExtremes(const Instance& inst, const EnumerationBudget& budget,
                                     bool pairwise) {
  return CheckExtremes(inst, budget, pairwise, false);
}

Instance PerturbInstance(const Instance& inst, Perturbation perturbation, std::vector<int>* kept) {
  const int m = inst.item_count();
  std::vector<int> keep(m);
  std::iota(keep.begin(), keep.end(), 0);
  if (perturbation.kind == Perturbation::kSupplyDecrease) {
    const int e = perturbation.index;
    Bundle b = inst.supply();
    --b[e];
    if (b[e] > 0) {
      if (kept) *kept = keep;
      return Instance(b, inst.raw_buyers(), inst.demand_caps());
    }
    keep.erase(keep.begin() + e);
    if (keep.empty()) throw MarketError(ErrorCode::kInvalidInstance, "no items left");
    std::vector<int> q;
    for (int f : keep) q.push_back(b[f]);
    std::vector<Valuation> buyers;
    for (const Valuation& v : inst.raw_buyers())
      buyers.push_back(Valuation::MakeCopyProjected(v, keep));
    if (kept) *kept = keep;
    return Instance(Bundle(q), buyers, inst.demand_caps());
  }
  std::vector<int> caps = inst.demand_caps().value_or(
      std::vector<int>(inst.buyer_count(), static_cast<int>(inst.supply().Norm())));
  if (caps[perturbation.index] == 0)
    throw MarketError(ErrorCode::kInvalidInstance, "demand cap already zero");
  --caps[perturbation.index];
  if (kept) *kept = keep;
  return Instance(inst.supply(), inst.raw_buyers(), caps);
}

MonotonicityVerdict MonotonicityHarness(const Instance& inst, Perturbation perturbation,
                                        const EnumerationBudget& budget) {
  MonotonicityVerdict v;
  if (perturbation.kind == Perturbation::kSupplyDecrease && inst.item_count() == 1 &&
      inst.supply()[0] == 1) {
    v.applicable = false;
    return v;
  }
  if (perturbation.kind == Perturbation::kDemandDecrease && inst.demand_caps() &&
      (*inst.demand_caps())[perturbation.index] == 0) {
    v.applicable = false;
    return v;
  }
  std::vector<int> kept;
  Instance after = PerturbInstance(inst, perturbation, &kept);
  BruteWalrasianResult w0 = BruteWalrasian(inst, budget);
  BruteWalrasianResult w1 = BruteWalrasian(after, budget);
  if (!w0.minimal || !w1.minimal) {
    v.holds = false;
    v.detail = "no Walrasian prices before or after";
    return v;
  }
  v.min_before = *w0.minimal;
  v.max_before = *w0.maximal;
  v.min_after = *w1.minimal;
  v.max_after = *w1.maximal;
  v.compared_items = kept;
  const bool up = perturbation.kind == Perturbation::kSupplyDecrease;
  for (size_t k = 0; k < kept.size(); ++k) {
    const int e = kept[k];
    const int ek = static_cast<int>(k);
    bool ok_min = up ? v.min_after[ek] >= v.min_before[e] : v.min_after[ek] <= v.min_before[e];
    bool ok_max = up ? v.max_after[ek] >= v.max_before[e] : v.max_after[ek] <= v.max_before[e];
    if (!ok_min || !ok_max) {
      v.holds = false;
      v.detail = "item e" + std::to_string(e + 1) + " moved the wrong way";
    }
  }
  return v;
}

}  // namespace gsmarket
