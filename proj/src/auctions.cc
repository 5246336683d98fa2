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

#include "gsmarket/auctions.h"

#include <algorithm>

#include "gsmarket/error.h"

namespace gsmarket {

const char* AuctionModeName(AuctionMode mode) {
  switch (mode) {
    case AuctionMode::kAscending: return "ascending";
    case AuctionMode::kDescending: return "descending";
    case AuctionMode::kTwoPhase: return "two-phase";
    case AuctionMode::kGreedy: return "greedy";
  }
  return "?";
}

std::optional<AuctionMode> ParseAuctionMode(const std::string& name) {
  for (AuctionMode m : {AuctionMode::kAscending, AuctionMode::kDescending,
                        AuctionMode::kTwoPhase, AuctionMode::kGreedy})
    if (name == AuctionModeName(m)) return m;
  if (name == "two_phase") return AuctionMode::kTwoPhase;
  return std::nullopt;
}

int64_t DefaultRoundLimit(const Instance& inst) {
  return 4 * int64_t{inst.buyer_count()} * inst.item_count() * (inst.MaxValue() + 1);
}

PriceVector DefaultDescendingStart(const Instance& inst) {
  return PriceVector(inst.item_count(), inst.MaxValue() + 1);
}

namespace {

class Driver {
 public:
  Driver(const Instance& inst, AuctionMode mode, PriceVector start, const AuctionOptions& opt)
      : inst_(inst), opt_(opt) {
    if (start.size() != inst.item_count())
      throw MarketError(ErrorCode::kLengthMismatch, "start price length");
    for (int e = 0; e < start.size(); ++e)
      if (start[e] < 0) throw MarketError(ErrorCode::kInvalidInstance, "negative start price");
    trace_.mode = mode;
    trace_.start = start;
    p_ = start;
    limit_ = opt.round_limit > 0 ? opt.round_limit : DefaultRoundLimit(inst);
  }

  DemandReport Over() { return Account(MinMaxOverdemanded(inst_, p_, nullptr, Options())); }
  DemandReport Under() { return Account(MinMaxUnderdemanded(inst_, p_, nullptr, Options())); }

  void Apply(const DemandReport& r, int direction) {
    if (static_cast<int64_t>(trace_.rounds.size()) >= limit_) {
      trace_.final_prices = p_;
      throw AuctionError(ErrorCode::kRoundLimitExceeded,
                         "no termination after " + std::to_string(limit_) + " rounds",
                         trace_);
    }
    AuctionRound round;
    round.index = static_cast<int>(trace_.rounds.size());
    round.direction = direction;
    round.set = r.set;
    round.magnitude = r.magnitude;
    round.lyapunov_before = Lyapunov(inst_, p_);
    p_ = p_.Shifted(r.set, direction);
    for (int e = 0; e < p_.size(); ++e) GSM_CHECK(p_[e] >= 0, "price went negative");
    round.lyapunov_after = Lyapunov(inst_, p_);
    if (inst_.AllSgsKnown())
      GSM_CHECK(round.lyapunov_after - round.lyapunov_before == -r.magnitude,
                "Lyapunov step does not match od/ud");
    round.counters = trace_.totals.oracle;
    round.prices = p_;
    trace_.rounds.push_back(round);
  }

  AuctionTrace Finish() {
    trace_.final_prices = p_;
    OracleCounters c;
    trace_.walrasian = IsWalrasian(inst_, p_, Route::kAuto, &c);
    if (inst_.AllSgsKnown()) {
      trace_.totals.oracle += c;
      trace_.solver_runs += 2;
    }
    if (!trace_.walrasian)
      throw AuctionError(ErrorCode::kStalledNotWalrasian,
                         "stopped at " + p_.ToString() + ", which is not Walrasian", trace_);
    if (opt_.extract_allocation) {
      if (inst_.AllSgsKnown()) {
        trace_.allocation = ExtractAllocation(inst_, p_, &trace_.totals);
        trace_.solver_runs += 2;
      } else {
        trace_.allocation = *FindAllocation(inst_, p_, AllocationKind::kWalrasian);
      }
    }
    return trace_;
  }

  const PriceVector& prices() const { return p_; }

 private:
  DemandSetOptions Options() const { return DemandSetOptions{opt_.solver}; }

  DemandReport Account(DemandReport r) {
    trace_.totals += r.witness.counters;
    ++trace_.solver_runs;
    return r;
  }

  const Instance& inst_;
  AuctionOptions opt_;
  AuctionTrace trace_;
  PriceVector p_;
  int64_t limit_;
};

}  // namespace

AuctionTrace RunAscending(const Instance& inst, std::optional<PriceVector> start,
                          const AuctionOptions& options) {
  Driver d(inst, AuctionMode::kAscending, start.value_or(PriceVector(inst.item_count())), options);
  while (true) {
    DemandReport r = d.Over();
    if (r.set.Empty()) break;
    d.Apply(r, +1);
  }
  return d.Finish();
}

AuctionTrace RunDescending(const Instance& inst, std::optional<PriceVector> start,
                           const AuctionOptions& options) {
  Driver d(inst, AuctionMode::kDescending, start.value_or(DefaultDescendingStart(inst)), options);
  while (true) {
    DemandReport r = d.Under();
    if (r.set.Empty()) break;
    d.Apply(r, -1);
  }
  return d.Finish();
}

AuctionTrace RunTwoPhase(const Instance& inst, const PriceVector& start,
                         const AuctionOptions& options) {
  Driver d(inst, AuctionMode::kTwoPhase, start, options);
  while (true) {
    DemandReport r = d.Over();
    if (r.set.Empty()) break;
    d.Apply(r, +1);
  }
  while (true) {
    DemandReport r = d.Under();
    if (r.set.Empty()) break;
    d.Apply(r, -1);
  }
  return d.Finish();
}

AuctionTrace RunGreedy(const Instance& inst, const PriceVector& start,
                       const AuctionOptions& options) {
  Driver d(inst, AuctionMode::kGreedy, start, options);
  while (true) {
    DemandReport over = d.Over();
    DemandReport under = d.Under();
    if (over.set.Empty() && under.set.Empty()) break;
    if (!over.set.Empty() && over.magnitude >= under.magnitude) d.Apply(over, +1);
    else d.Apply(under, -1);
  }
  return d.Finish();
}

AuctionTrace RunAuction(const Instance& inst, AuctionMode mode, std::optional<PriceVector> start,
                        const AuctionOptions& options) {
  switch (mode) {
    case AuctionMode::kAscending: return RunAscending(inst, start, options);
    case AuctionMode::kDescending: return RunDescending(inst, start, options);
    case AuctionMode::kTwoPhase:
      return RunTwoPhase(inst, start.value_or(PriceVector(inst.item_count())), options);
    case AuctionMode::kGreedy:
      return RunGreedy(inst, start.value_or(PriceVector(inst.item_count())), options);
  }
  throw MarketError(ErrorCode::kInvalidInstance, "unknown auction mode");
}

std::vector<Bundle> ExtractAllocation(const Instance& inst, const PriceVector& p,
                                      SolverCounters* counters) {
  const int m = inst.item_count();
  const int n = inst.buyer_count();
  const Bundle& b = inst.supply();
  SumSolution packing = SolvePolymatroidSum(inst, p, DemandSide::kMinimal, DefaultMode(inst));
  SumSolution covering = SolvePolymatroidSum(inst, p, DemandSide::kMaximal, DefaultMode(inst));
  if (counters) {
    *counters += packing.counters;
    *counters += covering.counters;
  }
  for (int e = 0; e < m; ++e)
    if (packing.totals[e] > b[e] || covering.totals[e] < b[e])
      throw MarketError(ErrorCode::kNotWalrasian, p.ToString() + " is not Walrasian");
  std::vector<Bundle> y = packing.bundles;
  const std::vector<Bundle>& z = covering.bundles;
  std::vector<int64_t> v_star(n);
  for (int i = 0; i < n; ++i)
    v_star[i] = ComputeIndirectUtility(inst.valuation(i), b, p).value;
  auto preferred = [&](int i, const Bundle& x) {
    return x.Fits(b) && Utility(inst.valuation(i), p, x) == v_star[i];
  };
  auto distance = [&]() {
    int64_t d = 0;
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < m; ++e) d += std::abs(z[i][e] - y[i][e]);
    return d;
  };
  int64_t dist = distance();
  while (true) {
    Bundle t = Allocation{y}.Totals(m);
    int e = 0;
    while (e < m && t[e] >= b[e]) ++e;
    if (e == m) break;
    int j = 0;
    while (j < n && y[j][e] >= z[j][e]) ++j;
    GSM_CHECK(j < n, "covering allocation does not cover");
    Bundle next = y[j];
    ++next[e];
    bool moved = preferred(j, next);
    for (int f = 0; f < m && !moved; ++f) {
      if (y[j][f] <= z[j][f]) continue;
      next = y[j];
      ++next[e];
      --next[f];
      moved = preferred(j, next);
    }
    if (!moved) throw MarketError(ErrorCode::kNotWalrasian, "exchange repair failed");
    y[j] = next;
    int64_t d = distance();
    GSM_CHECK(d < dist, "repair did not make progress");
    dist = d;
  }
  GSM_CHECK(Allocation{y}.Totals(m) == b, "repaired allocation does not clear");
  return y;
}

}  // namespace gsmarket
