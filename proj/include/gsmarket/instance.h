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

#ifndef GSMARKET_INSTANCE_H_
#define GSMARKET_INSTANCE_H_

#include <optional>
#include <vector>

#include "gsmarket/core_model.h"
#include "gsmarket/valuations.h"

namespace gsmarket {

class Instance {
 public:
  // Throws kInvalidInstance on any violated invariant.
  Instance(Bundle supply, std::vector<Valuation> buyers,
           std::optional<std::vector<int>> demand_caps = std::nullopt);

  int item_count() const { return supply_.size(); }
  int buyer_count() const { return static_cast<int>(buyers_.size()); }
  const Bundle& supply() const { return supply_; }
  const std::vector<Valuation>& raw_buyers() const { return buyers_; }
  const std::optional<std::vector<int>>& demand_caps() const { return caps_; }
  // Valuation seen by the algorithms: truncated when caps are present.
  const Valuation& valuation(int i) const { return effective_[i]; }
  bool AllSgsKnown() const;
  // max_i v_i(b).
  int64_t MaxValue() const;
  bool operator==(const Instance& o) const {
    return supply_ == o.supply_ && buyers_ == o.buyers_ && caps_ == o.caps_;
  }

 private:
  Bundle supply_;
  std::vector<Valuation> buyers_;
  std::optional<std::vector<int>> caps_;
  std::vector<Valuation> effective_;
};

struct CopiedInstance {
  Instance instance;
  std::vector<int> projection;  // copy item -> original item
};

// One unit-supply item per unit of supply.
CopiedInstance CopyToUnitSupply(const Instance& inst);

}  // namespace gsmarket

#endif  // GSMARKET_INSTANCE_H_
