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

#include "gsmarket/valuations.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "gsmarket/error.h"

namespace gsmarket {

const char* DemandSideName(DemandSide side) {
  return side == DemandSide::kMinimal ? "minimal" : "maximal";
}

// ---- matroids ----

namespace {

int Find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

struct IndependenceVisitor {
  ItemSet s;
  bool operator()(const UniformMatroid& u) const { return s.Size() <= u.rank; }
  bool operator()(const PartitionMatroid& pm) const {
    for (size_t k = 0; k < pm.blocks.size(); ++k) {
      int cnt = 0;
      for (int e : pm.blocks[k]) cnt += s.Contains(e);
      if (cnt > pm.caps[k]) return false;
    }
    return true;
  }
  bool operator()(const GraphicMatroid& g) const {
    std::vector<int> parent(g.vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    for (int e : s.Items()) {
      int a = Find(parent, g.edges[e].first), b = Find(parent, g.edges[e].second);
      if (a == b) return false;
      parent[a] = b;
    }
    return true;
  }
};

}  // namespace

bool MatroidIndependent(const MatroidDesc& matroid, ItemSet s) {
  return std::visit(IndependenceVisitor{s}, matroid);
}

int MatroidRank(const MatroidDesc& matroid, ItemSet s) {
  ItemSet basis;
  for (int e : s.Items()) {
    ItemSet t = basis;
    t.Insert(e);
    if (MatroidIndependent(matroid, t)) basis = t;
  }
  return basis.Size();
}

// ---- assignment ----

namespace {

// Max-weight matching in a bipartite graph given as a dense rows x cols
// weight matrix (absent edges weigh 0). Hungarian method on the padded
// square cost matrix -w.
int64_t MaxWeightMatching(const std::vector<std::vector<int64_t>>& w, int cols) {
  const int rows = static_cast<int>(w.size());
  const int n = std::max(rows, cols);
  if (n == 0) return 0;
  const int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
  auto cost = [&](int i, int j) -> int64_t {
    if (i < rows && j < cols) return -w[i][j];
    return 0;
  };
  std::vector<int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<int64_t> minv(n + 1, kInf);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = 0;
      int64_t delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        int64_t cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  int64_t total = 0;
  for (int j = 1; j <= n; ++j)
    if (p[j] != 0) total -= cost(p[j] - 1, j - 1);
  return total;
}

}  // namespace

// ---- representation ----

struct Valuation::Rep {
  std::variant<UnitDemand, Additive, MatroidRank, Oxs, Table, Truncated,
               CopyProjected>
      family;
  int item_count = 0;
  SgsStatus status = SgsStatus::kByConstruction;
};

namespace {

void RequireNonNegative(const std::vector<int64_t>& w, const char* what) {
  for (int64_t x : w)
    if (x < 0) throw MarketError(ErrorCode::kInvalidValuation, std::string(what) + ": negative weight");
  if (w.empty() || static_cast<int>(w.size()) > kMaxItems)
    throw MarketError(ErrorCode::kInvalidValuation, std::string(what) + ": bad item count");
}

}  // namespace

Valuation Valuation::MakeUnitDemand(std::vector<int64_t> w) {
  RequireNonNegative(w, "unit_demand");
  auto rep = std::make_shared<Rep>();
  rep->item_count = static_cast<int>(w.size());
  rep->family = UnitDemand{std::move(w)};
  return Valuation(rep);
}

Valuation Valuation::MakeAdditive(std::vector<int64_t> w) {
  RequireNonNegative(w, "additive");
  auto rep = std::make_shared<Rep>();
  rep->item_count = static_cast<int>(w.size());
  rep->family = Additive{std::move(w)};
  return Valuation(rep);
}

Valuation Valuation::MakeMatroidRank(MatroidDesc matroid, std::vector<int64_t> w) {
  RequireNonNegative(w, "matroid_rank");
  const int m = static_cast<int>(w.size());
  if (auto* pm = std::get_if<PartitionMatroid>(&matroid)) {
    if (pm->blocks.size() != pm->caps.size())
      throw MarketError(ErrorCode::kInvalidValuation, "partition: caps per block");
    std::vector<int> seen(m, 0);
    for (const auto& block : pm->blocks)
      for (int e : block) {
        if (e < 0 || e >= m) throw MarketError(ErrorCode::kInvalidValuation, "partition: item out of range");
        ++seen[e];
      }
    for (int c : seen)
      if (c != 1) throw MarketError(ErrorCode::kInvalidValuation, "partition: blocks must partition E");
    for (int c : pm->caps)
      if (c < 0) throw MarketError(ErrorCode::kInvalidValuation, "partition: negative cap");
  } else if (auto* g = std::get_if<GraphicMatroid>(&matroid)) {
    if (static_cast<int>(g->edges.size()) != m)
      throw MarketError(ErrorCode::kInvalidValuation, "graphic: one edge per item");
    for (auto [a, b] : g->edges)
      if (a < 0 || b < 0 || a >= g->vertex_count || b >= g->vertex_count)
        throw MarketError(ErrorCode::kInvalidValuation, "graphic: vertex out of range");
  } else if (std::get<UniformMatroid>(matroid).rank < 0) {
    throw MarketError(ErrorCode::kInvalidValuation, "uniform: negative rank");
  }
  auto rep = std::make_shared<Rep>();
  rep->item_count = m;
  rep->family = MatroidRank{std::move(matroid), std::move(w)};
  return Valuation(rep);
}

Valuation Valuation::MakeOxs(int item_count, int right_size, std::vector<OxsEdge> edges) {
  if (item_count < 1 || item_count > kMaxItems || right_size < 0)
    throw MarketError(ErrorCode::kInvalidValuation, "oxs: bad sizes");
  for (const OxsEdge& ed : edges)
    if (ed.item < 0 || ed.item >= item_count || ed.right < 0 ||
        ed.right >= right_size || ed.weight < 0)
      throw MarketError(ErrorCode::kInvalidValuation, "oxs: bad edge");
  auto rep = std::make_shared<Rep>();
  rep->item_count = item_count;
  rep->family = Oxs{item_count, right_size, std::move(edges)};
  return Valuation(rep);
}

Valuation Valuation::MakeTable(Bundle box, std::vector<int64_t> values, bool certify) {
  if (box.size() < 1 || box.size() > kMaxItems)
    throw MarketError(ErrorCode::kInvalidValuation, "table: bad item count");
  for (int e = 0; e < box.size(); ++e)
    if (box[e] < 0) throw MarketError(ErrorCode::kInvalidValuation, "table: negative box");
  if (static_cast<int64_t>(values.size()) != BoxCount(box))
    throw MarketError(ErrorCode::kInvalidValuation, "table: value count does not match box");
  if (values[0] != 0) throw MarketError(ErrorCode::kInvalidValuation, "table: v(0) != 0");
  ForEachBundle(box, [&](const Bundle& z) {
    int64_t vz = values[BoxIndex(z, box)];
    for (int e = 0; e < box.size(); ++e) {
      if (z[e] == box[e]) continue;
      Bundle y = z;
      ++y[e];
      if (values[BoxIndex(y, box)] < vz)
        throw MarketError(ErrorCode::kInvalidValuation,
                          "table: not monotone at " + z.ToString());
    }
  });
  auto rep = std::make_shared<Rep>();
  rep->item_count = box.size();
  rep->status = SgsStatus::kUnknown;
  rep->family = Table{std::move(box), std::move(values)};
  Valuation v(rep);
  if (certify) {
    const Table& t = std::get<Table>(rep->family);
    if (CheckMnatConcave(v, t.box, std::numeric_limits<int64_t>::max()))
      rep->status = SgsStatus::kCertified;
  }
  return v;
}

Valuation Valuation::MakeTable(const Bundle& box,
                               const std::function<int64_t(const Bundle&)>& fn,
                               bool certify) {
  std::vector<int64_t> values;
  values.reserve(BoxCount(box));
  ForEachBundle(box, [&](const Bundle& z) { values.push_back(fn(z)); });
  return MakeTable(box, std::move(values), certify);
}

Valuation Valuation::MakeTruncated(Valuation inner, int cap) {
  if (cap < 0) throw MarketError(ErrorCode::kInvalidValuation, "truncation cap < 0");
  auto rep = std::make_shared<Rep>();
  rep->item_count = inner.item_count();
  rep->status = inner.sgs_status();
  rep->family = Truncated{std::move(inner), cap};
  return Valuation(rep);
}

Valuation Valuation::MakeCopyProjected(Valuation inner, std::vector<int> projection) {
  if (projection.empty() || static_cast<int>(projection.size()) > kMaxItems)
    throw MarketError(ErrorCode::kInvalidValuation, "projection: bad size");
  for (int e : projection)
    if (e < 0 || e >= inner.item_count())
      throw MarketError(ErrorCode::kInvalidValuation, "projection: item out of range");
  auto rep = std::make_shared<Rep>();
  rep->item_count = static_cast<int>(projection.size());
  rep->status = inner.sgs_status();
  rep->family = CopyProjected{std::move(inner), std::move(projection)};
  return Valuation(rep);
}

int Valuation::item_count() const { return rep_->item_count; }
SgsStatus Valuation::sgs_status() const { return rep_->status; }

const char* Valuation::kind_name() const {
  static const char* kNames[] = {"unit_demand", "additive", "matroid_rank", "oxs",
                                 "table", "truncated", "copy_projected"};
  return kNames[rep_->family.index()];
}

template <typename T>
const T* Valuation::As() const {
  return std::get_if<T>(&rep_->family);
}
template const Valuation::UnitDemand* Valuation::As() const;
template const Valuation::Additive* Valuation::As() const;
template const Valuation::MatroidRank* Valuation::As() const;
template const Valuation::Oxs* Valuation::As() const;
template const Valuation::Table* Valuation::As() const;
template const Valuation::Truncated* Valuation::As() const;
template const Valuation::CopyProjected* Valuation::As() const;

bool Valuation::operator==(const Valuation& o) const {
  return rep_ == o.rep_ || rep_->family == o.rep_->family;
}

namespace {

struct ValueVisitor {
  const Bundle& z;

  int64_t operator()(const Valuation::UnitDemand& f) const {
    int64_t best = 0;
    for (int e = 0; e < z.size(); ++e)
      if (z[e] > 0) best = std::max(best, f.weights[e]);
    return best;
  }
  int64_t operator()(const Valuation::Additive& f) const {
    int64_t s = 0;
    for (int e = 0; e < z.size(); ++e) s += f.weights[e] * z[e];
    return s;
  }
  int64_t operator()(const Valuation::MatroidRank& f) const {
    std::vector<int> order;
    for (int e = 0; e < z.size(); ++e)
      if (z[e] > 0 && f.weights[e] > 0) order.push_back(e);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return f.weights[a] > f.weights[b]; });
    ItemSet basis;
    int64_t s = 0;
    for (int e : order) {
      ItemSet t = basis;
      t.Insert(e);
      if (MatroidIndependent(f.matroid, t)) {
        basis = t;
        s += f.weights[e];
      }
    }
    return s;
  }
  int64_t operator()(const Valuation::Oxs& f) const {
    std::vector<std::vector<int64_t>> w;
    for (int e = 0; e < z.size(); ++e) {
      if (z[e] == 0) continue;
      std::vector<int64_t> row(f.right_size, 0);
      bool any = false;
      for (const OxsEdge& ed : f.edges)
        if (ed.item == e) {
          row[ed.right] = std::max(row[ed.right], ed.weight);
          any = any || ed.weight > 0;
        }
      if (!any) continue;
      // A unit beyond right_size copies can never be matched.
      for (int k = 0; k < std::min(z[e], f.right_size); ++k) w.push_back(row);
    }
    return MaxWeightMatching(w, f.right_size);
  }
  int64_t operator()(const Valuation::Table& f) const {
    if (!z.Fits(f.box))
      throw MarketError(ErrorCode::kBundleOutOfBounds, "table lookup " + z.ToString());
    return f.values[BoxIndex(z, f.box)];
  }
  int64_t operator()(const Valuation::Truncated& f) const {
    // Greedy over y <= z; exact for M-natural concave inner valuations.
    const int m = z.size();
    Bundle y(m);
    int64_t vy = 0;
    const int64_t steps = std::min<int64_t>(f.cap, z.Norm());
    for (int64_t k = 0; k < steps; ++k) {
      int best_e = -1;
      int64_t best = -1;
      for (int e = 0; e < m; ++e) {
        if (y[e] == z[e]) continue;
        ++y[e];
        int64_t val = f.inner.Value(y);
        --y[e];
        if (val > best) {
          best = val;
          best_e = e;
        }
      }
      ++y[best_e];
      vy = best;
    }
    return vy;
  }
  int64_t operator()(const Valuation::CopyProjected& f) const {
    Bundle inner(f.inner.item_count());
    for (int e = 0; e < z.size(); ++e) inner[f.projection[e]] += z[e];
    return f.inner.Value(inner);
  }
};

}  // namespace

int64_t Valuation::Value(const Bundle& z, OracleCounters* counters) const {
  if (z.size() != rep_->item_count)
    throw MarketError(ErrorCode::kLengthMismatch, "bundle length vs valuation");
  for (int e = 0; e < z.size(); ++e)
    if (z[e] < 0) throw MarketError(ErrorCode::kBundleOutOfBounds, z.ToString());
  if (counters) ++counters->value_calls;
  return std::visit(ValueVisitor{z}, rep_->family);
}

// ---- oracles ----

int64_t Utility(const Valuation& v, const PriceVector& p, const Bundle& z,
                OracleCounters* counters) {
  return v.Value(z, counters) - p.Dot(z);
}

namespace {

struct GreedyRun {
  Bundle bundle;        // end of the maximal run
  Bundle minimal;       // prefix at the first non-positive marginal
  IndirectUtility iu;
};

// Adds one unit at a time, largest marginal utility first, lowest index on
// ties; stops at the first negative marginal.
GreedyRun RunGreedy(const Valuation& v, const Bundle& box, const PriceVector& p,
                    OracleCounters* c) {
  if (box.size() != v.item_count() || p.size() != box.size())
    throw MarketError(ErrorCode::kLengthMismatch, "greedy: sizes");
  const int m = box.size();
  GreedyRun r{Bundle(m), Bundle(m), {}};
  Bundle& z = r.bundle;
  int64_t vz = v.Value(z, c);
  bool minimal_done = false;
  int size = 0;
  while (true) {
    int best_e = -1;
    int64_t best = 0, best_val = 0;
    for (int e = 0; e < m; ++e) {
      if (z[e] >= box[e]) continue;
      ++z[e];
      int64_t val = v.Value(z, c);
      --z[e];
      int64_t marginal = val - vz - p[e];
      if (best_e < 0 || marginal > best) {
        best_e = e;
        best = marginal;
        best_val = val;
      }
    }
    if (best_e < 0 || best < 0) break;
    if (best == 0 && !minimal_done) {
      minimal_done = true;
      r.minimal = z;
      r.iu.min_size = size;
    }
    ++z[best_e];
    vz = best_val;
    r.iu.value += best;
    ++size;
  }
  if (!minimal_done) {
    r.minimal = z;
    r.iu.min_size = size;
  }
  r.iu.max_size = size;
  return r;
}

}  // namespace

IndirectUtility ComputeIndirectUtility(const Valuation& v, const Bundle& box,
                                       const PriceVector& p, OracleCounters* counters) {
  return RunGreedy(v, box, p, counters).iu;
}

Bundle Demand(const Valuation& v, const Bundle& box, const PriceVector& p,
              DemandSide side, OracleCounters* counters) {
  if (counters) ++counters->do_calls;
  GreedyRun r = RunGreedy(v, box, p, counters);
  return side == DemandSide::kMinimal ? r.minimal : r.bundle;
}

bool InDemandSet(const Valuation& v, const Bundle& box, const PriceVector& p,
                 DemandSide side, const IndirectUtility& iu, const Bundle& z,
                 OracleCounters* counters) {
  if (!z.Fits(box)) return false;
  int64_t size = side == DemandSide::kMinimal ? iu.min_size : iu.max_size;
  if (z.Norm() != size) return false;
  return Utility(v, p, z, counters) == iu.value;
}

BuyerOracle::BuyerOracle(const Valuation& v, const Bundle& box, const PriceVector& p,
                         DemandSide side, OracleCounters* counters, bool debug)
    : v_(v), box_(box), p_(p), side_(side), counters_(counters), debug_(debug) {
  iu_ = ComputeIndirectUtility(v_, box_, p_, counters_);
}

Bundle BuyerOracle::Demand() { return gsmarket::Demand(v_, box_, p_, side_, counters_); }

bool BuyerOracle::Contains(const Bundle& z) const {
  return InDemandSet(v_, box_, p_, side_, iu_, z);
}

int64_t BuyerOracle::Search(const Bundle& z, int e, int f, OracleCounters* c) const {
  if (e == f) return 0;
  int hi = std::min(z[f], box_[e] - z[e]);
  int lo = 0;
  auto feasible = [&](int alpha) {
    Bundle y = z;
    y[f] -= alpha;
    y[e] += alpha;
    return Utility(v_, p_, y, c) == iu_.value;
  };
  while (lo < hi) {
    int mid = lo + (hi - lo + 1) / 2;
    if (feasible(mid)) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

int64_t BuyerOracle::Weight(const Bundle& z, int e, int f) {
  if (counters_) ++counters_->exo_calls;
  if (debug_) {
    if (!Contains(z))
      throw MarketError(ErrorCode::kNotPreferredBundle,
                        z.ToString() + " is not in the " + DemandSideName(side_) +
                            " demand set");
  }
  int64_t w = Search(z, e, f, counters_);
  if (debug_ && e != f) {
    int hi = std::min(z[f], box_[e] - z[e]);
    for (int alpha = 1; alpha <= hi; ++alpha) {
      Bundle y = z;
      y[f] -= alpha;
      y[e] += alpha;
      bool in = Utility(v_, p_, y) == iu_.value;
      GSM_CHECK(in == (alpha <= w), "exchange feasibility is not an interval");
    }
  }
  return w;
}

int64_t BuyerOracle::PeekWeight(const Bundle& z, int e, int f) const {
  return Search(z, e, f, nullptr);
}

ItemSet BuyerOracle::TightSet(const Bundle& z, int e) {
  ItemSet t;
  t.Insert(e);
  for (int f = 0; f < z.size(); ++f)
    if (f != e && Weight(z, e, f) > 0) t.Insert(f);
  return t;
}

int64_t ExchangeWeight(const Valuation& v, const Bundle& box, const PriceVector& p,
                       const Bundle& z, int e, int f, DemandSide side,
                       OracleCounters* counters) {
  BuyerOracle o(v, box, p, side, nullptr);
  int64_t w = o.Weight(z, e, f);
  if (counters) ++counters->exo_calls;
  return w;
}

ItemSet TightSet(const Valuation& v, const Bundle& box, const PriceVector& p,
                 const Bundle& z, int e, DemandSide side, OracleCounters* counters) {
  BuyerOracle o(v, box, p, side, counters);
  return o.TightSet(z, e);
}

// ---- enumeration ----

std::vector<Bundle> EnumeratePreferred(const Valuation& v, const Bundle& box,
                                       const PriceVector& p, int64_t max_points) {
  if (BoxCount(box) > max_points)
    throw MarketError(ErrorCode::kEnumerationLimit,
                      "box has " + std::to_string(BoxCount(box)) + " points");
  int64_t best = std::numeric_limits<int64_t>::min();
  std::vector<Bundle> out;
  ForEachBundle(box, [&](const Bundle& z) {
    int64_t u = Utility(v, p, z);
    if (u > best) {
      best = u;
      out.clear();
    }
    if (u == best) out.push_back(z);
  });
  return out;
}

RankValue Rank(const Valuation& v, const Bundle& box, const PriceVector& p, ItemSet s,
               DemandSide side, int64_t max_points) {
  std::vector<Bundle> d = EnumeratePreferred(v, box, p, max_points);
  int64_t target = side == DemandSide::kMinimal ? std::numeric_limits<int64_t>::max() : -1;
  for (const Bundle& z : d)
    target = side == DemandSide::kMinimal ? std::min(target, z.Norm())
                                          : std::max(target, z.Norm());
  const ItemSet all = ItemSet::All(box.size());
  const ItemSet rest = s.Complement(box.size());
  int64_t r_s = 0, r_all = 0, r_rest = 0;
  for (const Bundle& z : d) {
    if (z.Norm() != target) continue;
    r_s = std::max(r_s, z.Sum(s));
    r_all = std::max(r_all, z.Sum(all));
    r_rest = std::max(r_rest, z.Sum(rest));
  }
  return {r_s, r_all - r_rest};
}

bool CheckMnatConcave(const Valuation& v, const Bundle& box, int64_t max_points) {
  const int64_t count = BoxCount(box);
  if (count > max_points)
    throw MarketError(ErrorCode::kEnumerationLimit, "M-natural check: box too large");
  const int m = box.size();
  std::vector<Bundle> pts;
  std::vector<int64_t> val;
  pts.reserve(count);
  ForEachBundle(box, [&](const Bundle& z) {
    pts.push_back(z);
    val.push_back(v.Value(z));
  });
  auto at = [&](const Bundle& z) { return val[BoxIndex(z, box)]; };
  for (const Bundle& x : pts) {
    const int64_t vx = at(x);
    for (const Bundle& y : pts) {
      const int64_t lhs = vx + at(y);
      for (int e = 0; e < m; ++e) {
        if (x[e] <= y[e]) continue;
        Bundle x1 = x, y1 = y;
        --x1[e];
        ++y1[e];
        if (lhs <= at(x1) + at(y1)) continue;
        bool ok = false;
        for (int f = 0; f < m && !ok; ++f) {
          if (x[f] >= y[f]) continue;
          ++x1[f];
          --y1[f];
          ok = lhs <= at(x1) + at(y1);
          --x1[f];
          ++y1[f];
        }
        if (!ok) return false;
      }
    }
  }
  return true;
}

bool CheckMConvex(const std::vector<Bundle>& set) {
  std::set<Bundle> members(set.begin(), set.end());
  for (const Bundle& x : set)
    for (const Bundle& y : set)
      for (int e = 0; e < x.size(); ++e) {
        if (x[e] <= y[e]) continue;
        bool ok = false;
        for (int f = 0; f < x.size() && !ok; ++f) {
          if (x[f] >= y[f]) continue;
          Bundle x1 = x, y1 = y;
          --x1[e];
          ++x1[f];
          ++y1[e];
          --y1[f];
          ok = members.count(x1) && members.count(y1);
        }
        if (!ok) return false;
      }
  return true;
}

Valuation Truncate(const Valuation& v, int cap) { return Valuation::MakeTruncated(v, cap); }

}  // namespace gsmarket
