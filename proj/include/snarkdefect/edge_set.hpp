#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace snarkdefect {

/// Dense bitset over edge ids 0..size-1.
///
/// Ordering is the lexicographic order of the sorted id lists, which for equal
/// cardinalities reduces to "the set owning the lowest differing id is smaller".
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(int size) : size_(size), words_((size + 63) / 64, 0) {}

  static EdgeSet from_ids(int size, const std::vector<int>& ids) {
    EdgeSet s(size);
    for (int id : ids) s.insert(id);
    return s;
  }

  int universe() const { return size_; }

  bool contains(int e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }
  void insert(int e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  void erase(int e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::vector<int> ids() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w) {
        out.push_back(static_cast<int>(i * 64) + std::countr_zero(w));
        w &= w - 1;
      }
    }
    return out;
  }

  EdgeSet& operator|=(const EdgeSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  EdgeSet& operator&=(const EdgeSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  EdgeSet& operator^=(const EdgeSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  friend EdgeSet operator|(EdgeSet a, const EdgeSet& b) { return a |= b; }
  friend EdgeSet operator&(EdgeSet a, const EdgeSet& b) { return a &= b; }
  friend EdgeSet operator^(EdgeSet a, const EdgeSet& b) { return a ^= b; }

  EdgeSet complement() const {
    EdgeSet c(size_);
    for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i];
    if (size_ & 63) c.words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
    return c;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

  friend std::strong_ordering operator<=>(const EdgeSet& a, const EdgeSet& b) {
    auto ia = a.ids();
    auto ib = b.ids();
    return ia <=> ib;
  }

 private:
  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace snarkdefect
