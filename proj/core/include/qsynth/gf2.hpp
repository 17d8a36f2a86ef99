#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace qsynth {

/// Row-reduced echelon basis of a subspace of GF(2)^64.
///
/// Each basis row remembers which inserted generators it is the XOR of
/// (a 64-bit tag), so membership tests can also return a witness subset.
class Gf2Basis {
 public:
  /// Returns false if v was already in the span.
  bool insert(std::uint64_t v, std::uint64_t tag = 0);

  std::uint64_t reduce(std::uint64_t v) const noexcept {
    for (std::uint64_t hits = v & pivots_; hits != 0; hits &= hits - 1) {
      v ^= rows_[std::countr_zero(hits)];
    }
    return v;
  }

  /// Reduces v and accumulates the tags of the rows used.
  std::uint64_t reduce(std::uint64_t v, std::uint64_t& tag) const noexcept {
    for (std::uint64_t hits = v & pivots_; hits != 0; hits &= hits - 1) {
      const int b = std::countr_zero(hits);
      v ^= rows_[b];
      tag ^= tags_[b];
    }
    return v;
  }

  bool contains(std::uint64_t v) const noexcept { return reduce(v) == 0; }
  int dim() const noexcept { return std::popcount(pivots_); }
  std::uint64_t pivots() const noexcept { return pivots_; }

  /// Basis rows ordered by pivot; identical for identical subspaces.
  std::vector<std::uint64_t> canonical() const;

 private:
  std::array<std::uint64_t, 64> rows_{};
  std::array<std::uint64_t, 64> tags_{};
  std::uint64_t pivots_ = 0;
};

int gf2_rank(const std::vector<std::uint64_t>& vectors);

}  // namespace qsynth
