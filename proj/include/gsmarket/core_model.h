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

#ifndef GSMARKET_CORE_MODEL_H_
#define GSMARKET_CORE_MODEL_H_

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace gsmarket {

inline constexpr int kMaxItems = 64;

// Subset of item indices, backed by a 64-bit mask.
class ItemSet {
 public:
  ItemSet() = default;
  static ItemSet FromMask(uint64_t mask) {
    ItemSet s;
    s.bits_ = mask;
    return s;
  }
  static ItemSet Of(std::initializer_list<int> items);
  static ItemSet All(int m) {
    return FromMask(m >= 64 ? ~uint64_t{0} : ((uint64_t{1} << m) - 1));
  }

  bool Contains(int e) const { return (bits_ >> e) & 1; }
  void Insert(int e) { bits_ |= uint64_t{1} << e; }
  void Erase(int e) { bits_ &= ~(uint64_t{1} << e); }
  int Size() const { return std::popcount(bits_); }
  bool Empty() const { return bits_ == 0; }
  uint64_t mask() const { return bits_; }
  std::vector<int> Items() const;
  // Complement within {0..m-1}.
  ItemSet Complement(int m) const { return FromMask(All(m).bits_ & ~bits_); }
  bool IsSubsetOf(ItemSet o) const { return (bits_ & ~o.bits_) == 0; }

  ItemSet operator|(ItemSet o) const { return FromMask(bits_ | o.bits_); }
  ItemSet operator&(ItemSet o) const { return FromMask(bits_ & o.bits_); }
  bool operator==(const ItemSet&) const = default;
  // 1-based labels, "{e1,e3}".
  std::string ToString() const;

 private:
  uint64_t bits_ = 0;
};

// Integer vector over items. Used for bundles z and for the supply b.
class Bundle {
 public:
  Bundle() = default;
  explicit Bundle(int m) : q_(m, 0) {}
  Bundle(std::initializer_list<int> q) : q_(q) {}
  explicit Bundle(std::vector<int> q) : q_(std::move(q)) {}
  static Bundle Unit(int m, int e) {
    Bundle z(m);
    z.q_[e] = 1;
    return z;
  }
  static Bundle Indicator(int m, ItemSet s);

  int size() const { return static_cast<int>(q_.size()); }
  int operator[](int e) const { return q_[e]; }
  int& operator[](int e) { return q_[e]; }
  const std::vector<int>& values() const { return q_; }

  int64_t Norm() const;
  int64_t Sum(ItemSet s) const;
  ItemSet Support() const;
  bool Fits(const Bundle& box) const;  // 0 <= z <= box
  bool operator==(const Bundle&) const = default;
  bool operator<(const Bundle& o) const { return q_ < o.q_; }
  std::string ToString() const;

 private:
  std::vector<int> q_;
};

class PriceVector {
 public:
  PriceVector() = default;
  explicit PriceVector(int m, int64_t fill = 0) : p_(m, fill) {}
  PriceVector(std::initializer_list<int64_t> p) : p_(p) {}
  explicit PriceVector(std::vector<int64_t> p) : p_(std::move(p)) {}

  int size() const { return static_cast<int>(p_.size()); }
  int64_t operator[](int e) const { return p_[e]; }
  int64_t& operator[](int e) { return p_[e]; }
  const std::vector<int64_t>& values() const { return p_; }

  int64_t Dot(const Bundle& z) const;
  // p + sign * chi_S.
  PriceVector Shifted(ItemSet s, int sign) const;
  bool LessEq(const PriceVector& o) const;
  bool operator==(const PriceVector&) const = default;
  bool operator<(const PriceVector& o) const { return p_ < o.p_; }
  std::string ToString() const;

 private:
  std::vector<int64_t> p_;
};

struct Allocation {
  std::vector<Bundle> bundles;
  Bundle Totals(int m) const;
};

struct ItemClassification {
  ItemSet oversold;
  ItemSet undersold;
  ItemSet exact;
};

// z - alpha*chi_f + alpha*chi_e. Throws kBundleOutOfBounds.
Bundle Exchange(const Bundle& z, const Bundle& box, int e, int f, int alpha);

ItemClassification ClassifyItems(const Allocation& a, const Bundle& supply);
ItemClassification ClassifyTotals(const Bundle& totals, const Bundle& supply);

struct MeetJoin {
  PriceVector meet;
  PriceVector join;
};
MeetJoin MeetAndJoin(const PriceVector& p, const PriceVector& q);

// Number of integer points in [0, box]; saturates at INT64_MAX.
int64_t BoxCount(const Bundle& box);
// Calls fn on every z in [0, box] in lexicographic order (last coordinate
// fastest).
void ForEachBundle(const Bundle& box, const std::function<void(const Bundle&)>& fn);
// Mixed-radix position of z inside [0, box].
int64_t BoxIndex(const Bundle& z, const Bundle& box);

}  // namespace gsmarket

#endif  // GSMARKET_CORE_MODEL_H_
