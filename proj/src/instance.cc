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

#include "gsmarket/instance.h"

#include <algorithm>

#include "gsmarket/error.h"

namespace gsmarket {

Instance::Instance(Bundle supply, std::vector<Valuation> buyers,
                   std::optional<std::vector<int>> demand_caps)
    : supply_(std::move(supply)), buyers_(std::move(buyers)), caps_(std::move(demand_caps)) {
  const int m = supply_.size();
  if (m < 1 || m > kMaxItems)
    throw MarketError(ErrorCode::kInvalidInstance, "item count out of range");
  if (buyers_.empty()) throw MarketError(ErrorCode::kInvalidInstance, "no buyers");
  for (int e = 0; e < m; ++e)
    if (supply_[e] < 1) throw MarketError(ErrorCode::kInvalidInstance, "supply must be >= 1");
  for (const Valuation& v : buyers_) {
    if (v.item_count() != m)
      throw MarketError(ErrorCode::kInvalidInstance, "valuation item count != m");
    if (const auto* t = v.As<Valuation::Table>())
      if (!supply_.Fits(t->box))
        throw MarketError(ErrorCode::kInvalidInstance, "table box smaller than supply");
  }
  if (caps_) {
    if (caps_->size() != buyers_.size())
      throw MarketError(ErrorCode::kInvalidInstance, "one demand cap per buyer");
    for (int d : *caps_)
      if (d < 0) throw MarketError(ErrorCode::kInvalidInstance, "negative demand cap");
  }
  for (size_t i = 0; i < buyers_.size(); ++i)
    effective_.push_back(caps_ ? Truncate(buyers_[i], (*caps_)[i]) : buyers_[i]);
}

bool Instance::AllSgsKnown() const {
  return std::all_of(effective_.begin(), effective_.end(), [](const Valuation& v) {
    return v.sgs_status() != SgsStatus::kUnknown;
  });
}

int64_t Instance::MaxValue() const {
  int64_t best = 0;
  for (const Valuation& v : effective_) best = std::max(best, v.Value(supply_));
  return best;
}

CopiedInstance CopyToUnitSupply(const Instance& inst) {
  std::vector<int> projection;
  for (int e = 0; e < inst.item_count(); ++e)
    for (int k = 0; k < inst.supply()[e]; ++k) projection.push_back(e);
  const int m2 = static_cast<int>(projection.size());
  if (m2 > kMaxItems)
    throw MarketError(ErrorCode::kInvalidInstance, "too many copy items");
  bool identity = m2 == inst.item_count();
  std::vector<Valuation> buyers;
  for (const Valuation& v : inst.raw_buyers())
    buyers.push_back(identity ? v : Valuation::MakeCopyProjected(v, projection));
  return {Instance(Bundle(std::vector<int>(m2, 1)), std::move(buyers), inst.demand_caps()),
          projection};
}

}  // namespace gsmarket
