#include "qsynth/gf2.hpp"

namespace qsynth {

bool Gf2Basis::insert(std::uint64_t v, std::uint64_t tag) {
  v = reduce(v, tag);
  if (v == 0) return false;
  const int p = std::countr_zero(v);
  const std::uint64_t bit = std::uint64_t{1} << p;
  for (std::uint64_t rest = pivots_; rest != 0; rest &= rest - 1) {
    const int b = std::countr_zero(rest);
    if (rows_[b] & bit) {
      rows_[b] ^= v;
      tags_[b] ^= tag;
    }
  }
  rows_[p] = v;
  tags_[p] = tag;
  pivots_ |= bit;
  return true;
}

std::vector<std::uint64_t> Gf2Basis::canonical() const {
  std::vector<std::uint64_t> out;
  out.reserve(dim());
  for (std::uint64_t rest = pivots_; rest != 0; rest &= rest - 1) {
    out.push_back(rows_[std::countr_zero(rest)]);
  }
  return out;
}

int gf2_rank(const std::vector<std::uint64_t>& vectors) {
  Gf2Basis basis;
  for (auto v : vectors) basis.insert(v);
  return basis.dim();
}

}  // namespace qsynth
