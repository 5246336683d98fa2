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

#ifndef GSMARKET_CLI_H_
#define GSMARKET_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gsmarket/auctions.h"
#include "gsmarket/bruteforce.h"
#include "gsmarket/generators.h"
#include "gsmarket/io.h"

namespace gsmarket {

enum ExitCode { kExitOk = 0, kExitInput = 1, kExitGuard = 2, kExitBudget = 3 };
int ExitCodeFor(ErrorCode code);

struct SolveResult {
  int exit_code = kExitOk;
  AuctionTrace trace;        // partial when the run failed
  bool has_trace = false;
  std::string diagnostic;
  std::vector<std::string> warnings;
  // Compared against the run from the default start when --start is given.
  std::optional<bool> extreme;
};
SolveResult CmdSolve(const Instance& inst, AuctionMode mode, std::optional<PriceVector> start,
                     int64_t round_limit = 0);

enum class VerifyScope { kAll, kSum, kSets, kWalrasian, kMonotonicity };
std::optional<VerifyScope> ParseVerifyScope(const std::string& name);
const char* VerifyScopeName(VerifyScope scope);

struct VerifyOptions {
  VerifyScope scope = VerifyScope::kAll;
  std::optional<AuctionTrace> trace;
  std::optional<std::string> trace_digest;
  EnumerationBudget budget;
  int64_t max_failures = 8;  // listed per check
};
// Verdict JSON for one instance; exit code through *exit_code.
Json CmdVerify(const Instance& inst, const VerifyOptions& options, int* exit_code);

struct BenchSpec {
  Family family = Family::kUnitDemand;
  int n = 3;
  int max_supply = 1;
  int m_min = 4;
  int m_max = 12;
  int reps = 3;
  int64_t value_cap = 20;
  uint64_t seed = 1;
};
struct BenchRow {
  int m = 0, n = 0, max_supply = 0;
  std::string digest;
  SumMode mode = SumMode::kUnitSupply;
  DemandSide side = DemandSide::kMinimal;
  SolverCounters counters;
  int64_t max_level_pushes = 0;
  double wall_us = 0;
  double exo_per_nm3 = 0;
  std::optional<double> exo_per_unit_bound;  // unit supply only
};
// Counter bounds are checked on every run and raise kInternalInvariant.
std::vector<BenchRow> CmdBench(const BenchSpec& spec);
void WriteBenchCsv(const std::vector<BenchRow>& rows, std::ostream& out);

// Entry point of the gsmarket executable.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gsmarket

#endif  // GSMARKET_CLI_H_
