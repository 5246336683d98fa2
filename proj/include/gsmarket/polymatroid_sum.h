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

#ifndef GSMARKET_POLYMATROID_SUM_H_
#define GSMARKET_POLYMATROID_SUM_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "gsmarket/core_model.h"
#include "gsmarket/instance.h"
#include "gsmarket/valuations.h"

namespace gsmarket {

enum class SumMode { kUnitSupply, kMultiSupply };
const char* SumModeName(SumMode mode);

enum class PushKind { kSaturating, kNonSaturating };

struct SolverOptions {
  // L1/L2 after every operation, shadow scans, exchange-interval scans,
  // demand-set membership of every bundle.
  bool debug_checks = false;
};

struct SolverCounters {
  int64_t relabels = 0;
  int64_t saturating_pushes = 0;
  int64_t nonsaturating_pushes = 0;
  int64_t steps = 0;
  std::vector<int64_t> pushes_per_level;
  OracleCounters oracle;

  SolverCounters& operator+=(const SolverCounters& o);
};

struct LevelState {
  std::vector<int> level;
  // Bit e of undersold_at[l] is set iff e is undersold and level[e] == l.
  std::vector<uint64_t> undersold_at;
  // Next lexicographic (buyer, item) pair to scan, per item.
  std::vector<std::pair<int, int>> pointer;
  SolverCounters counters;
};

struct SumSolution {
  std::vector<Bundle> bundles;
  Bundle totals;
  std::vector<int> levels;
  ItemSet certificate;
  int64_t value = 0;  // sum_e min(t(e), b(e))
  SolverCounters counters;
};

// Explicitly listed base set (tests and hand-built fixtures).
class ExplicitBaseSet : public BaseOracle {
 public:
  explicit ExplicitBaseSet(std::vector<Bundle> members, OracleCounters* counters = nullptr);
  Bundle Initial() override;
  int64_t Weight(const Bundle& z, int e, int f) override;
  int64_t PeekWeight(const Bundle& z, int e, int f) const override;

 private:
  std::vector<Bundle> members_;
  OracleCounters* counters_;
};

class PushRelabelSolver {
 public:
  struct Candidate {
    int buyer;
    int item;
    int64_t weight;
  };

  // Throws kModeMismatch for kUnitSupply with a supply other than all ones.
  PushRelabelSolver(Bundle supply, std::vector<BaseOracle*> oracles, SumMode mode,
                    SolverOptions options = {});

  // One Initial() call per oracle.
  void Initialize();
  std::optional<int> SelectWorkItem() const;
  // First eligible pair for e; multi-supply moves the pointer onto it (or
  // past the end when none is found).
  std::optional<Candidate> ScanForPush(int e);
  PushKind Push(int e, int buyer, int f);
  PushKind ApplyPush(int e, int buyer, int f, int64_t weight);
  void Relabel(int e);
  SumSolution Run();
  SumSolution Snapshot() const;

  void SetPointer(int e, int buyer, int item) { state_.pointer[e] = {buyer, item}; }
  const LevelState& state() const { return state_; }
  const std::vector<Bundle>& bundles() const { return z_; }
  const Bundle& totals() const { return t_; }
  // Smallest empty level and the items below it.
  ItemSet CertificateSet() const;
  std::vector<int64_t> Potential() const;  // Phi(l), unit supply only

 private:
  bool Undersold(int e) const { return t_[e] < b_[e]; }
  void SetTotal(int e, int value);
  void CheckInvariants() const;
  void ShadowScan(int e) const;
  std::optional<Candidate> ScanUnit(int e);
  std::optional<Candidate> ScanMulti(int e);
  void Step();

  Bundle b_;
  std::vector<BaseOracle*> oracles_;
  SumMode mode_;
  SolverOptions options_;
  int m_;
  int n_;
  std::vector<Bundle> z_;
  Bundle t_;
  LevelState state_;
  std::vector<std::vector<int>> entry_level_;  // unit supply
  std::vector<int64_t> phi_;
  std::vector<char> left_oversold_;
  int64_t step_limit_ = 0;
  bool initialized_ = false;
};

// Solves the polymatroid sum over the buyers' demand sets at p.
SumSolution SolvePolymatroidSum(const Instance& inst, const PriceVector& p,
                                DemandSide side, SumMode mode,
                                OracleCounters* counters = nullptr,
                                SolverOptions options = {});
// kUnitSupply when every b(e) = 1.
SumMode DefaultMode(const Instance& inst);

// Verifies the three optimality conditions with ranks from enumeration.
bool CheckCertificate(const std::vector<Bundle>& z, ItemSet s, const Instance& inst,
                      const PriceVector& p, DemandSide side,
                      int64_t max_points = 4096);

}  // namespace gsmarket

#endif  // GSMARKET_POLYMATROID_SUM_H_
