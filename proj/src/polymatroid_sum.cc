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

#include "gsmarket/polymatroid_sum.h"

#include <algorithm>
#include <set>

#include "gsmarket/error.h"

namespace gsmarket {

const char* SumModeName(SumMode mode) {
  return mode == SumMode::kUnitSupply ? "unit_supply" : "multi_supply";
}

SolverCounters& SolverCounters::operator+=(const SolverCounters& o) {
  relabels += o.relabels;
  saturating_pushes += o.saturating_pushes;
  nonsaturating_pushes += o.nonsaturating_pushes;
  steps += o.steps;
  if (pushes_per_level.size() < o.pushes_per_level.size())
    pushes_per_level.resize(o.pushes_per_level.size(), 0);
  for (size_t l = 0; l < o.pushes_per_level.size(); ++l)
    pushes_per_level[l] += o.pushes_per_level[l];
  oracle += o.oracle;
  return *this;
}

// ---- ExplicitBaseSet ----

ExplicitBaseSet::ExplicitBaseSet(std::vector<Bundle> members, OracleCounters* counters)
    : members_(std::move(members)), counters_(counters) {
  if (members_.empty()) throw MarketError(ErrorCode::kInvalidValuation, "empty base set");
  std::sort(members_.begin(), members_.end());
}

Bundle ExplicitBaseSet::Initial() {
  if (counters_) ++counters_->do_calls;
  return members_.front();
}

int64_t ExplicitBaseSet::PeekWeight(const Bundle& z, int e, int f) const {
  if (e == f) return 0;
  int64_t w = 0;
  Bundle y = z;
  while (y[f] > 0) {
    --y[f];
    ++y[e];
    if (!std::binary_search(members_.begin(), members_.end(), y)) break;
    ++w;
  }
  return w;
}

int64_t ExplicitBaseSet::Weight(const Bundle& z, int e, int f) {
  if (counters_) ++counters_->exo_calls;
  return PeekWeight(z, e, f);
}

// ---- solver ----

PushRelabelSolver::PushRelabelSolver(Bundle supply, std::vector<BaseOracle*> oracles,
                                     SumMode mode, SolverOptions options)
    : b_(std::move(supply)),
      oracles_(std::move(oracles)),
      mode_(mode),
      options_(options),
      m_(b_.size()),
      n_(static_cast<int>(oracles_.size())) {
  if (n_ < 1 || m_ < 1) throw MarketError(ErrorCode::kInvalidInstance, "empty solver input");
  if (mode_ == SumMode::kUnitSupply)
    for (int e = 0; e < m_; ++e)
      if (b_[e] != 1)
        throw MarketError(ErrorCode::kModeMismatch, "unit-supply mode needs b = 1");
  const int64_t m = m_, n = n_;
  step_limit_ = m * m + m * m * m + n * m * (m * m + m) + 16;
}

void PushRelabelSolver::Initialize() {
  z_.clear();
  for (BaseOracle* o : oracles_) {
    Bundle z = o->Initial();
    if (!z.Fits(b_))
      throw MarketError(ErrorCode::kBundleOutOfBounds, "initial bundle " + z.ToString());
    z_.push_back(std::move(z));
  }
  state_ = LevelState{};
  state_.level.assign(m_, 0);
  state_.undersold_at.assign(m_ + 1, 0);
  state_.pointer.assign(m_, {0, 0});
  state_.counters.pushes_per_level.assign(m_ + 1, 0);
  t_ = Bundle(m_);
  for (int e = 0; e < m_; ++e) {
    int total = 0;
    for (const Bundle& z : z_) total += z[e];
    t_[e] = total;
    if (Undersold(e)) state_.undersold_at[0] |= uint64_t{1} << e;
  }
  entry_level_.assign(n_, std::vector<int>(m_, 0));
  phi_.assign(m_ + 1, 0);
  for (const Bundle& z : z_) phi_[0] += z.Support().Size();
  left_oversold_.assign(m_, 0);
  for (int e = 0; e < m_; ++e) left_oversold_[e] = t_[e] <= b_[e];
  initialized_ = true;
  if (options_.debug_checks) CheckInvariants();
}

void PushRelabelSolver::SetTotal(int e, int value) {
  const uint64_t bit = uint64_t{1} << e;
  const int l = state_.level[e];
  state_.undersold_at[l] &= ~bit;
  t_[e] = value;
  if (Undersold(e)) state_.undersold_at[l] |= bit;
  if (t_[e] <= b_[e]) left_oversold_[e] = 1;
  else GSM_CHECK(!left_oversold_[e], "item became oversold again");
}

std::optional<int> PushRelabelSolver::SelectWorkItem() const {
  for (int l = m_ - 1; l >= 0; --l)
    if (state_.undersold_at[l] != 0) return std::countr_zero(state_.undersold_at[l]);
  return std::nullopt;
}

void PushRelabelSolver::Step() {
  ++state_.counters.steps;
  GSM_CHECK(state_.counters.steps <= step_limit_, "step bound exceeded");
}

std::optional<PushRelabelSolver::Candidate> PushRelabelSolver::ScanMulti(int e) {
  if (options_.debug_checks) ShadowScan(e);
  const int target = state_.level[e] - 1;
  auto [j, g] = state_.pointer[e];
  for (int i = j; i < n_; ++i) {
    for (int f = (i == j ? g : 0); f < m_; ++f) {
      if (f == e || state_.level[f] != target) continue;
      if (z_[i][f] == 0 || z_[i][e] >= b_[e]) continue;
      int64_t w = oracles_[i]->Weight(z_[i], e, f);
      if (w > 0) {
        state_.pointer[e] = {i, f};
        return Candidate{i, f, w};
      }
    }
  }
  state_.pointer[e] = {n_, 0};
  return std::nullopt;
}

std::optional<PushRelabelSolver::Candidate> PushRelabelSolver::ScanUnit(int e) {
  const int target = state_.level[e] - 1;
  if (target < 0) return std::nullopt;
  if (target == 0) {
    for (int i = 0; i < n_; ++i)
      for (int f = 0; f < m_; ++f) {
        if (f == e || state_.level[f] != 0 || z_[i][f] == 0 || z_[i][e] != 0) continue;
        int64_t w = oracles_[i]->Weight(z_[i], e, f);
        if (w > 0) return Candidate{i, f, w};
      }
    return std::nullopt;
  }
  for (int f = 0; f < m_; ++f) {
    if (f == e || state_.level[f] != target || t_[f] == 0) continue;
    GSM_CHECK(t_[f] == 1, "item above level 0 has several owners");
    int owner = 0;
    while (z_[owner][f] == 0) ++owner;
    if (z_[owner][e] != 0) continue;
    int64_t w = oracles_[owner]->Weight(z_[owner], e, f);
    if (w > 0) return Candidate{owner, f, w};
  }
  return std::nullopt;
}

std::optional<PushRelabelSolver::Candidate> PushRelabelSolver::ScanForPush(int e) {
  GSM_CHECK(initialized_, "solver not initialized");
  return mode_ == SumMode::kUnitSupply ? ScanUnit(e) : ScanMulti(e);
}

PushKind PushRelabelSolver::Push(int e, int buyer, int f) {
  int64_t w = oracles_[buyer]->Weight(z_[buyer], e, f);
  return ApplyPush(e, buyer, f, w);
}

PushKind PushRelabelSolver::ApplyPush(int e, int buyer, int f, int64_t weight) {
  GSM_CHECK(initialized_, "solver not initialized");
  const int le = state_.level[e];
  GSM_CHECK(Undersold(e), "push from a sold item");
  GSM_CHECK(le < m_, "push at level m");
  GSM_CHECK(e != f && state_.level[f] == le - 1, "push target not one level down");
  GSM_CHECK(weight > 0, "push along a zero weight");
  const int64_t deficit = b_[e] - t_[e];
  const int alpha = static_cast<int>(std::min(deficit, weight));
  const PushKind kind = weight <= deficit ? PushKind::kSaturating : PushKind::kNonSaturating;
  z_[buyer] = Exchange(z_[buyer], b_, e, f, alpha);
  SetTotal(e, t_[e] + alpha);
  SetTotal(f, t_[f] - alpha);
  GSM_CHECK(t_[e] <= b_[e], "push oversold its item");

  if (kind == PushKind::kSaturating) {
    ++state_.counters.saturating_pushes;
  } else {
    ++state_.counters.nonsaturating_pushes;
    if (mode_ == SumMode::kMultiSupply) {
      const int64_t m = m_;
      GSM_CHECK(state_.counters.nonsaturating_pushes <= m * m * m,
                "non-saturating pushes exceed m^3");
    }
  }
  ++state_.counters.pushes_per_level[le];
  if (mode_ == SumMode::kMultiSupply) {
    if (kind == PushKind::kNonSaturating) state_.pointer[e] = {buyer, f};
    else state_.pointer[e] = f + 1 < m_ ? std::make_pair(buyer, f + 1)
                                        : std::make_pair(buyer + 1, 0);
  } else {
    // Phi(l) gains one for l <= level(e) and loses one for l <= entry(f).
    const int entry_f = entry_level_[buyer][f];
    GSM_CHECK(entry_f < le, "potential would decrease");
    for (int l = entry_f + 1; l <= le; ++l) ++phi_[l];
    entry_level_[buyer][e] = le;
    for (int l = 1; l <= m_; ++l)
      GSM_CHECK(phi_[l] <= m_, "potential exceeds m");
    GSM_CHECK(state_.counters.pushes_per_level[le] <= m_, "more than m pushes on a level");
  }
  Step();
  if (options_.debug_checks) CheckInvariants();
  return kind;
}

void PushRelabelSolver::Relabel(int e) {
  GSM_CHECK(initialized_, "solver not initialized");
  const int l = state_.level[e];
  GSM_CHECK(l < m_, "relabel at level m");
  if (options_.debug_checks) {
    for (int i = 0; i < n_; ++i)
      for (int f = 0; f < m_; ++f) {
        if (f == e || state_.level[f] != l - 1 || z_[i][f] == 0 || z_[i][e] >= b_[e]) continue;
        GSM_CHECK(oracles_[i]->PeekWeight(z_[i], e, f) == 0, "relabel with an eligible pair");
      }
  }
  const uint64_t bit = uint64_t{1} << e;
  const bool undersold = (state_.undersold_at[l] & bit) != 0;
  state_.undersold_at[l] &= ~bit;
  state_.level[e] = l + 1;
  if (undersold) state_.undersold_at[l + 1] |= bit;
  state_.pointer[e] = {0, 0};
  ++state_.counters.relabels;
  const int64_t m = m_;
  GSM_CHECK(state_.counters.relabels <= m * m, "relabels exceed m^2");
  Step();
  if (options_.debug_checks) CheckInvariants();
}

SumSolution PushRelabelSolver::Run() {
  if (!initialized_) Initialize();
  while (auto next = SelectWorkItem()) {
    const int e = *next;
    if (mode_ == SumMode::kUnitSupply) {
      auto c = ScanUnit(e);
      if (c) ApplyPush(e, c->buyer, c->item, c->weight);
      else Relabel(e);
      continue;
    }
    while (Undersold(e)) {
      auto c = ScanMulti(e);
      if (!c) {
        Relabel(e);
        break;
      }
      // A saturating push that exactly fills e also ends the scan.
      if (ApplyPush(e, c->buyer, c->item, c->weight) == PushKind::kNonSaturating) break;
    }
  }
  return Snapshot();
}

ItemSet PushRelabelSolver::CertificateSet() const {
  std::vector<char> used(m_ + 1, 0);
  for (int l : state_.level) used[l] = 1;
  int empty = 0;
  while (empty <= m_ && used[empty]) ++empty;
  ItemSet s;
  for (int e = 0; e < m_; ++e)
    if (state_.level[e] < empty) s.Insert(e);
  return s;
}

SumSolution PushRelabelSolver::Snapshot() const {
  SumSolution sol;
  sol.bundles = z_;
  sol.totals = t_;
  sol.levels = state_.level;
  sol.certificate = CertificateSet();
  for (int e = 0; e < m_; ++e) sol.value += std::min(t_[e], b_[e]);
  sol.counters = state_.counters;
  return sol;
}

std::vector<int64_t> PushRelabelSolver::Potential() const {
  std::vector<int64_t> phi(m_ + 1, 0);
  for (int i = 0; i < n_; ++i)
    for (int f = 0; f < m_; ++f)
      if (z_[i][f] > 0)
        for (int l = 0; l <= entry_level_[i][f]; ++l) ++phi[l];
  return phi;
}

void PushRelabelSolver::CheckInvariants() const {
  Bundle t(m_);
  for (const Bundle& z : z_) {
    GSM_CHECK(z.Fits(b_), "bundle leaves the box");
    for (int e = 0; e < m_; ++e) t[e] += z[e];
  }
  GSM_CHECK(t == t_, "incremental totals drifted");
  for (int e = 0; e < m_; ++e) {
    const int l = state_.level[e];
    GSM_CHECK(l >= 0 && l <= m_, "level out of range");
    if (t_[e] > b_[e]) GSM_CHECK(l == 0, "L1: oversold item above level 0");
    for (int k = 0; k <= m_; ++k) {
      bool listed = (state_.undersold_at[k] >> e) & 1;
      GSM_CHECK(listed == (k == l && Undersold(e)), "level lists out of sync");
    }
  }
  for (int i = 0; i < n_; ++i)
    for (int e = 0; e < m_; ++e) {
      if (z_[i][e] >= b_[e]) continue;
      for (int f = 0; f < m_; ++f) {
        if (f == e || z_[i][f] == 0) continue;
        if (state_.level[f] >= state_.level[e] - 1) continue;
        GSM_CHECK(oracles_[i]->PeekWeight(z_[i], e, f) == 0,
                  "L2: tight set reaches two levels down");
      }
    }
  if (mode_ == SumMode::kUnitSupply) {
    std::vector<int64_t> phi = Potential();
    for (int l = 1; l <= m_; ++l) GSM_CHECK(phi[l] == phi_[l], "potential bookkeeping");
  }
}

void PushRelabelSolver::ShadowScan(int e) const {
  const int target = state_.level[e] - 1;
  auto [j, g] = state_.pointer[e];
  for (int i = 0; i <= std::min(j, n_ - 1); ++i)
    for (int f = 0; f < (i == j ? g : m_); ++f) {
      if (f == e || state_.level[f] != target) continue;
      if (z_[i][f] == 0 || z_[i][e] >= b_[e]) continue;
      GSM_CHECK(oracles_[i]->PeekWeight(z_[i], e, f) == 0,
                "eligible pair before the lexicographic pointer");
    }
}

SumMode DefaultMode(const Instance& inst) {
  for (int e = 0; e < inst.item_count(); ++e)
    if (inst.supply()[e] != 1) return SumMode::kMultiSupply;
  return SumMode::kUnitSupply;
}

SumSolution SolvePolymatroidSum(const Instance& inst, const PriceVector& p,
                                DemandSide side, SumMode mode,
                                OracleCounters* counters, SolverOptions options) {
  if (p.size() != inst.item_count())
    throw MarketError(ErrorCode::kLengthMismatch, "price vector length");
  OracleCounters local;
  std::vector<BuyerOracle> buyers;
  buyers.reserve(inst.buyer_count());
  for (int i = 0; i < inst.buyer_count(); ++i)
    buyers.emplace_back(inst.valuation(i), inst.supply(), p, side, &local,
                        options.debug_checks);
  std::vector<BaseOracle*> ptrs;
  for (BuyerOracle& o : buyers) ptrs.push_back(&o);
  PushRelabelSolver solver(inst.supply(), ptrs, mode, options);
  SumSolution sol = solver.Run();
  GSM_CHECK(local.do_calls == inst.buyer_count(), "one demand query per buyer");
  if (options.debug_checks)
    for (int i = 0; i < inst.buyer_count(); ++i)
      if (!buyers[i].Contains(sol.bundles[i]))
        throw MarketError(ErrorCode::kNotPreferredBundle, "solver left the demand set");
  sol.counters.oracle = local;
  if (counters) *counters += local;
  return sol;
}

bool CheckCertificate(const std::vector<Bundle>& z, ItemSet s, const Instance& inst,
                      const PriceVector& p, DemandSide side, int64_t max_points) {
  const int m = inst.item_count();
  if (static_cast<int>(z.size()) != inst.buyer_count()) return false;
  Bundle t(m);
  for (const Bundle& zi : z) {
    if (!zi.Fits(inst.supply())) return false;
    for (int e = 0; e < m; ++e) t[e] += zi[e];
  }
  for (int e = 0; e < m; ++e) {
    if (s.Contains(e) && t[e] < inst.supply()[e]) return false;
    if (!s.Contains(e) && t[e] > inst.supply()[e]) return false;
  }
  const ItemSet rest = s.Complement(m);
  for (int i = 0; i < inst.buyer_count(); ++i) {
    const Valuation& v = inst.valuation(i);
    IndirectUtility iu;
    std::vector<Bundle> pref = EnumeratePreferred(v, inst.supply(), p, max_points);
    int64_t target = side == DemandSide::kMinimal ? INT64_MAX : -1;
    for (const Bundle& y : pref)
      target = side == DemandSide::kMinimal ? std::min(target, y.Norm())
                                            : std::max(target, y.Norm());
    if (z[i].Norm() != target) return false;
    if (Utility(v, p, z[i]) != Utility(v, p, pref.front())) return false;
    if (z[i].Sum(rest) != Rank(v, inst.supply(), p, rest, side, max_points).rank)
      return false;
  }
  return true;
}

}  // namespace gsmarket
