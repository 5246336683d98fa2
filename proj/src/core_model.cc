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

#include "gsmarket/core_model.h"

#include <algorithm>
#include <limits>
#include <sstream>

#include "gsmarket/error.h"

namespace gsmarket {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBundleOutOfBounds: return "BundleOutOfBounds";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInvalidInstance: return "InvalidInstance";
    case ErrorCode::kInvalidValuation: return "InvalidValuation";
    case ErrorCode::kNotPreferredBundle: return "NotPreferredBundle";
    case ErrorCode::kModeMismatch: return "ModeMismatch";
    case ErrorCode::kEnumerationLimit: return "EnumerationLimit";
    case ErrorCode::kInternalInvariant: return "InternalInvariantError";
    case ErrorCode::kRoundLimitExceeded: return "RoundLimitExceeded";
    case ErrorCode::kStalledNotWalrasian: return "StalledNotWalrasian";
    case ErrorCode::kNotWalrasian: return "NotWalrasian";
    case ErrorCode::kParse: return "ParseError";
  }
  return "Unknown";
}

void InvariantFailure(const std::string& what) {
  throw MarketError(ErrorCode::kInternalInvariant, what);
}

ItemSet ItemSet::Of(std::initializer_list<int> items) {
  ItemSet s;
  for (int e : items) s.Insert(e);
  return s;
}

std::vector<int> ItemSet::Items() const {
  std::vector<int> out;
  for (uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

std::string ItemSet::ToString() const {
  std::string s = "{";
  bool first = true;
  for (int e : Items()) {
    if (!first) s += ",";
    s += "e" + std::to_string(e + 1);
    first = false;
  }
  return s + "}";
}

Bundle Bundle::Indicator(int m, ItemSet s) {
  Bundle z(m);
  for (int e : s.Items()) z[e] = 1;
  return z;
}

int64_t Bundle::Norm() const {
  int64_t n = 0;
  for (int x : q_) n += x;
  return n;
}

int64_t Bundle::Sum(ItemSet s) const {
  int64_t n = 0;
  for (int e : s.Items()) n += q_[e];
  return n;
}

ItemSet Bundle::Support() const {
  ItemSet s;
  for (int e = 0; e < size(); ++e)
    if (q_[e] > 0) s.Insert(e);
  return s;
}

bool Bundle::Fits(const Bundle& box) const {
  if (box.size() != size()) return false;
  for (int e = 0; e < size(); ++e)
    if (q_[e] < 0 || q_[e] > box[e]) return false;
  return true;
}

std::string Bundle::ToString() const {
  std::ostringstream os;
  os << "(";
  for (int e = 0; e < size(); ++e) os << (e ? "," : "") << q_[e];
  os << ")";
  return os.str();
}

int64_t PriceVector::Dot(const Bundle& z) const {
  int64_t s = 0;
  for (int e = 0; e < size(); ++e) s += p_[e] * z[e];
  return s;
}

PriceVector PriceVector::Shifted(ItemSet s, int sign) const {
  PriceVector q = *this;
  for (int e : s.Items()) q.p_[e] += sign;
  return q;
}

bool PriceVector::LessEq(const PriceVector& o) const {
  for (int e = 0; e < size(); ++e)
    if (p_[e] > o.p_[e]) return false;
  return true;
}

std::string PriceVector::ToString() const {
  std::ostringstream os;
  os << "(";
  for (int e = 0; e < size(); ++e) os << (e ? "," : "") << p_[e];
  os << ")";
  return os.str();
}

Bundle Allocation::Totals(int m) const {
  Bundle t(m);
  for (const Bundle& z : bundles)
    for (int e = 0; e < m; ++e) t[e] += z[e];
  return t;
}

Bundle Exchange(const Bundle& z, const Bundle& box, int e, int f, int alpha) {
  if (alpha == 0) return z;
  if (e == f || alpha < 0 || z[f] < alpha || z[e] + alpha > box[e])
    throw MarketError(ErrorCode::kBundleOutOfBounds,
                      "exchange leaves the box: z=" + z.ToString());
  Bundle out = z;
  out[f] -= alpha;
  out[e] += alpha;
  return out;
}

ItemClassification ClassifyTotals(const Bundle& totals, const Bundle& supply) {
  if (totals.size() != supply.size())
    throw MarketError(ErrorCode::kLengthMismatch, "totals vs supply");
  ItemClassification c;
  for (int e = 0; e < supply.size(); ++e) {
    if (totals[e] > supply[e]) c.oversold.Insert(e);
    else if (totals[e] < supply[e]) c.undersold.Insert(e);
    else c.exact.Insert(e);
  }
  return c;
}

ItemClassification ClassifyItems(const Allocation& a, const Bundle& supply) {
  for (const Bundle& z : a.bundles)
    if (!z.Fits(supply))
      throw MarketError(ErrorCode::kBundleOutOfBounds, z.ToString());
  return ClassifyTotals(a.Totals(supply.size()), supply);
}

MeetJoin MeetAndJoin(const PriceVector& p, const PriceVector& q) {
  if (p.size() != q.size())
    throw MarketError(ErrorCode::kLengthMismatch, "meet/join of unequal lengths");
  MeetJoin r{p, p};
  for (int e = 0; e < p.size(); ++e) {
    r.meet[e] = std::min(p[e], q[e]);
    r.join[e] = std::max(p[e], q[e]);
  }
  return r;
}

int64_t BoxCount(const Bundle& box) {
  int64_t n = 1;
  for (int e = 0; e < box.size(); ++e) {
    int64_t k = box[e] + 1;
    if (n > std::numeric_limits<int64_t>::max() / k)
      return std::numeric_limits<int64_t>::max();
    n *= k;
  }
  return n;
}

void ForEachBundle(const Bundle& box, const std::function<void(const Bundle&)>& fn) {
  const int m = box.size();
  Bundle z(m);
  while (true) {
    fn(z);
    int e = m - 1;
    while (e >= 0 && z[e] == box[e]) z[e--] = 0;
    if (e < 0) return;
    ++z[e];
  }
}

int64_t BoxIndex(const Bundle& z, const Bundle& box) {
  int64_t idx = 0;
  for (int e = 0; e < box.size(); ++e) idx = idx * (box[e] + 1) + z[e];
  return idx;
}

}  // namespace gsmarket
