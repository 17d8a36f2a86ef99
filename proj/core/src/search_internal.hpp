#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsynth/codes.hpp"

namespace qsynth::detail {

/// quad_rank with a lookup table for n <= 7 (2^21 entries at most).
class RankOracle {
 public:
  explicit RankOracle(int n);

  int n() const noexcept { return n_; }
  int rank(QuadCode code) const noexcept { return table_.empty() ? quad_rank(n_, code) : table_[code]; }

 private:
  int n_;
  std::vector<std::uint8_t> table_;
};

/// Shared, lazily built oracle for n in [2, 11].
const RankOracle& rank_oracle(int n);

/// min over v in span(generators) of rank(y ^ v) / 2: the exact number of
/// extra patterns y needs when the generators are free. Past max_dim
/// generators the coset is not enumerated and 1 is returned for y outside
/// the span.
int coset_distance(const RankOracle& oracle, QuadCode y, std::span<const QuadCode> generators, int max_dim = 14);

/// Admissible bound on the patterns still needed so that span(generators)
/// plus the new patterns contains every open row. With W' the open rows
/// taken modulo the generators (dimension k) and N_s the number of nonzero
/// elements of W' at coset distance <= s, t new patterns can only suffice
/// if N_s >= 2^(k+s-t) - 1 for every s <= t: any s of them cover a
/// subspace of W' of dimension at least k + s - t. Returns -1 when the
/// enumeration would exceed 2^max_dim elements.
int subspace_bound(const RankOracle& oracle, std::span<const QuadCode> generators, std::span<const QuadCode> open_rows,
                   int max_dim = 16);

/// rank(q) / 2 rank-2 forms XORing to q, found by symplectic reduction.
std::vector<QuadCode> symplectic_split(int n, QuadCode q);

}  // namespace qsynth::detail
