#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "gossipage/errors.hpp"

namespace gossipage {

/// Membership bitmask over node indices. Capacity is arbitrary; subsets of
/// graphs up to 64 nodes can round-trip through a single word via low64(),
/// which is what the exact solver and the enumeration machinery key on.
class NodeSet {
public:
  NodeSet() = default;

  explicit NodeSet(std::int64_t capacity) : n_(capacity), bits_((capacity + 63) / 64, 0) {}

  static NodeSet single(std::int64_t capacity, int i) {
    NodeSet s(capacity);
    s.set(i);
    return s;
  }

  static NodeSet full(std::int64_t capacity) {
    NodeSet s(capacity);
    for (std::int64_t i = 0; i < capacity; ++i) s.set(static_cast<int>(i));
    return s;
  }

  static NodeSet of(std::int64_t capacity, std::initializer_list<int> nodes) {
    NodeSet s(capacity);
    for (int i : nodes) s.set(i);
    return s;
  }

  static NodeSet from_mask(std::int64_t capacity, std::uint64_t mask) {
    if (capacity > 64) throw validation_error("mask constructor requires capacity <= 64");
    NodeSet s(capacity);
    if (!s.bits_.empty()) s.bits_[0] = mask;
    return s;
  }

  std::int64_t capacity() const { return n_; }

  bool test(int i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }

  void set(int i) {
    check_range(i);
    bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void reset(int i) {
    check_range(i);
    bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  int count() const {
    int c = 0;
    for (std::uint64_t w : bits_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (std::uint64_t w : bits_)
      if (w) return false;
    return true;
  }

  bool is_full() const { return count() == n_; }

  std::uint64_t low64() const {
    if (n_ > 64) throw validation_error("low64 requires capacity <= 64");
    return bits_.empty() ? 0 : bits_[0];
  }

  template <class F>
  void for_each(F&& fn) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word) {
        int b = std::countr_zero(word);
        fn(static_cast<int>(w * 64 + b));
        word &= word - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  friend bool operator==(const NodeSet& a, const NodeSet& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

private:
  void check_range(int i) const {
    if (i < 0 || i >= n_) throw validation_error("node index out of range");
  }

  std::int64_t n_ = 0;
  std::vector<std::uint64_t> bits_;
};

} // namespace gossipage
