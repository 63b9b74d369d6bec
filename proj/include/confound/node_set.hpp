#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <vector>

namespace confound {

using NodeIndex = std::size_t;

/// Graphs are capped at this many nodes so that node sets fit in one word.
inline constexpr std::size_t kMaxNodes = 64;

/// A set of node indices stored as a 64-bit mask. Iteration is in
/// increasing index order.
class NodeSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = NodeIndex;
    using difference_type = std::ptrdiff_t;
    using pointer = const NodeIndex*;
    using reference = NodeIndex;

    iterator() = default;
    explicit iterator(std::uint64_t rest) : rest_(rest) {}

    NodeIndex operator*() const { return static_cast<NodeIndex>(std::countr_zero(rest_)); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr NodeSet() = default;
  constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}
  NodeSet(std::initializer_list<NodeIndex> members) {
    for (NodeIndex i : members) insert(i);
  }

  static NodeSet from(std::span<const NodeIndex> members) {
    NodeSet s;
    for (NodeIndex i : members) s.insert(i);
    return s;
  }

  /// The first `n` indices.
  static constexpr NodeSet first(std::size_t n) {
    return NodeSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(NodeIndex i) const { return (bits_ >> i) & 1U; }

  void insert(NodeIndex i) { bits_ |= std::uint64_t{1} << i; }
  void erase(NodeIndex i) { bits_ &= ~(std::uint64_t{1} << i); }

  NodeSet with(NodeIndex i) const {
    NodeSet s = *this;
    s.insert(i);
    return s;
  }
  NodeSet without(NodeIndex i) const {
    NodeSet s = *this;
    s.erase(i);
    return s;
  }

  constexpr bool is_subset_of(NodeSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(NodeSet other) const { return (bits_ & other.bits_) != 0; }

  friend constexpr NodeSet operator|(NodeSet a, NodeSet b) { return NodeSet(a.bits_ | b.bits_); }
  friend constexpr NodeSet operator&(NodeSet a, NodeSet b) { return NodeSet(a.bits_ & b.bits_); }
  friend constexpr NodeSet operator-(NodeSet a, NodeSet b) { return NodeSet(a.bits_ & ~b.bits_); }
  NodeSet& operator|=(NodeSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  NodeSet& operator&=(NodeSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  NodeSet& operator-=(NodeSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }

  friend constexpr bool operator==(NodeSet, NodeSet) = default;

  iterator begin() const { return iterator(bits_); }
  iterator end() const { return iterator(0); }

  std::vector<NodeIndex> to_vector() const { return {begin(), end()}; }

 private:
  std::uint64_t bits_ = 0;
};

/// Visits every subset of `ordered` by increasing size; subsets of equal size
/// come in lexicographic order of their positions in `ordered`. `visit`
/// returns false to stop early. Returns false iff stopped early.
template <typename Visit>
bool for_each_subset_by_size(std::span<const NodeIndex> ordered, Visit&& visit,
                             std::size_t max_size = kMaxNodes) {
  const std::size_t n = ordered.size();
  if (max_size > n) max_size = n;
  std::vector<std::size_t> pos;
  for (std::size_t k = 0; k <= max_size; ++k) {
    pos.resize(k);
    for (std::size_t i = 0; i < k; ++i) pos[i] = i;
    while (true) {
      NodeSet s;
      for (std::size_t p : pos) s.insert(ordered[p]);
      if (!visit(s)) return false;
      // advance to the next k-combination
      std::size_t i = k;
      while (i > 0 && pos[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++pos[i - 1];
      for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  return true;
}

}  // namespace confound
