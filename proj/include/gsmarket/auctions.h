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

#ifndef GSMARKET_AUCTIONS_H_
#define GSMARKET_AUCTIONS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsmarket/core_model.h"
#include "gsmarket/demand_sets.h"
#include "gsmarket/error.h"
#include "gsmarket/instance.h"
#include "gsmarket/polymatroid_sum.h"

namespace gsmarket {

enum class AuctionMode { kAscending, kDescending, kTwoPhase, kGreedy };
const char* AuctionModeName(AuctionMode mode);
std::optional<AuctionMode> ParseAuctionMode(const std::string& name);

struct AuctionRound {
  int index = 0;
  int direction = 0;  // +1 raise, -1 lower
  ItemSet set;
  int64_t magnitude = 0;
  int64_t lyapunov_before = 0;
  int64_t lyapunov_after = 0;
  OracleCounters counters;  // cumulative after the round
  PriceVector prices;       // after the round
};

struct AuctionTrace {
  AuctionMode mode = AuctionMode::kAscending;
  PriceVector start;
  std::vector<AuctionRound> rounds;
  PriceVector final_prices;
  bool walrasian = false;
  std::vector<Bundle> allocation;
  SolverCounters totals;  // summed over every solver run, oracle included
  int64_t solver_runs = 0;
};

struct AuctionOptions {
  int64_t round_limit = 0;  // 0: 4*n*m*(max_i v_i(b) + 1)
  SolverOptions solver;
  bool extract_allocation = true;
};

// Carries the partial trace of a run that hit the round limit or stopped at
// prices that are not Walrasian.
class AuctionError : public MarketError {
 public:
  AuctionError(ErrorCode code, const std::string& what, AuctionTrace trace)
      : MarketError(code, what), trace_(std::move(trace)) {}
  const AuctionTrace& trace() const { return trace_; }

 private:
  AuctionTrace trace_;
};

int64_t DefaultRoundLimit(const Instance& inst);
PriceVector DefaultDescendingStart(const Instance& inst);

AuctionTrace RunAscending(const Instance& inst, std::optional<PriceVector> start = std::nullopt,
                          const AuctionOptions& options = {});
AuctionTrace RunDescending(const Instance& inst, std::optional<PriceVector> start = std::nullopt,
                           const AuctionOptions& options = {});
AuctionTrace RunTwoPhase(const Instance& inst, const PriceVector& start,
                         const AuctionOptions& options = {});
AuctionTrace RunGreedy(const Instance& inst, const PriceVector& start,
                       const AuctionOptions& options = {});
AuctionTrace RunAuction(const Instance& inst, AuctionMode mode,
                        std::optional<PriceVector> start = std::nullopt,
                        const AuctionOptions& options = {});

// Walrasian allocation at p by repairing a packing allocation toward a
// covering one. Throws kNotWalrasian when p is not Walrasian.
std::vector<Bundle> ExtractAllocation(const Instance& inst, const PriceVector& p,
                                      SolverCounters* counters = nullptr);

}  // namespace gsmarket

#endif  // GSMARKET_AUCTIONS_H_
