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

#ifndef LATDR_ELEMENT_SET_H_
#define LATDR_ELEMENT_SET_H_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace latdr {

// Maximum number of poset elements. Sets are stored as one 64-bit word.
inline constexpr int kMaxElements = 64;

// A subset of poset elements {0, ..., n-1} with n <= kMaxElements.
class ElementSet {
 public:
  class Iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    Iterator() = default;
    explicit Iterator(uint64_t rest) : rest_(rest) {}
    int operator*() const { return std::countr_zero(rest_); }
    Iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    Iterator operator++(int) {
      Iterator copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const Iterator& other) const = default;

   private:
    uint64_t rest_ = 0;
  };

  constexpr ElementSet() = default;
  static constexpr ElementSet FromMask(uint64_t mask) {
    ElementSet s;
    s.mask_ = mask;
    return s;
  }
  static ElementSet Of(std::initializer_list<int> elements) {
    ElementSet s;
    for (int p : elements) s.Insert(p);
    return s;
  }
  static ElementSet FromVector(const std::vector<int>& elements) {
    ElementSet s;
    for (int p : elements) s.Insert(p);
    return s;
  }
  // {0, ..., n-1}.
  static constexpr ElementSet FirstN(int n) {
    return FromMask(n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1);
  }
  static constexpr ElementSet Single(int p) {
    return FromMask(uint64_t{1} << p);
  }

  constexpr uint64_t mask() const { return mask_; }
  constexpr bool Contains(int p) const { return (mask_ >> p) & 1; }
  constexpr void Insert(int p) { mask_ |= uint64_t{1} << p; }
  constexpr void Erase(int p) { mask_ &= ~(uint64_t{1} << p); }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool IsSubsetOf(ElementSet other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr bool Intersects(ElementSet other) const {
    return (mask_ & other.mask_) != 0;
  }
  // Smallest member; undefined on the empty set.
  int Min() const { return std::countr_zero(mask_); }
  std::vector<int> ToVector() const {
    return std::vector<int>(begin(), end());
  }

  Iterator begin() const { return Iterator(mask_); }
  Iterator end() const { return Iterator(0); }

  friend constexpr ElementSet operator|(ElementSet a, ElementSet b) {
    return FromMask(a.mask_ | b.mask_);
  }
  friend constexpr ElementSet operator&(ElementSet a, ElementSet b) {
    return FromMask(a.mask_ & b.mask_);
  }
  // Set difference.
  friend constexpr ElementSet operator-(ElementSet a, ElementSet b) {
    return FromMask(a.mask_ & ~b.mask_);
  }
  ElementSet& operator|=(ElementSet o) {
    mask_ |= o.mask_;
    return *this;
  }
  ElementSet& operator&=(ElementSet o) {
    mask_ &= o.mask_;
    return *this;
  }
  ElementSet& operator-=(ElementSet o) {
    mask_ &= ~o.mask_;
    return *this;
  }
  friend constexpr bool operator==(ElementSet a, ElementSet b) = default;

 private:
  uint64_t mask_ = 0;
};

}  // namespace latdr

#endif  // LATDR_ELEMENT_SET_H_
