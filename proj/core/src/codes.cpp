#include "qsynth/codes.hpp"

#include <array>
#include <bit>

#include "qsynth/error.hpp"

namespace qsynth {

namespace {

void check_width(int n) {
  if (n < 2 || n > 11) throw Error(ErrorCode::UnsupportedSize, "bit width " + std::to_string(n));
}

}  // namespace

QuadCode encode_quad(int n, std::span<const std::pair<int, int>> monomials) {
  check_width(n);
  QuadCode code = 0;
  for (auto [i, j] : monomials) {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
      throw Error(ErrorCode::InvalidArgument, "bad quadratic monomial");
    }
    code ^= quad_monomial(n, i, j);
  }
  return code;
}

std::vector<std::pair<int, int>> decode_quad(int n, QuadCode code) {
  check_width(n);
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (code & quad_monomial(n, i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

LinCode encode_lin(int n, std::span<const int> variables) {
  check_width(n);
  LinCode code = 0;
  for (int v : variables) {
    if (v < 0 || v >= n) throw Error(ErrorCode::InvalidArgument, "bad variable index");
    code ^= lin_var(n, v);
  }
  return code;
}

std::vector<int> decode_lin(int n, LinCode code) {
  check_width(n);
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (lin_has(n, code, i)) out.push_back(i);
  }
  return out;
}

QuadCode quad_part_of_product(int n, LinCode l1, LinCode l2) noexcept {
  // (sum a_i x_i)(sum b_j x_j): the coefficient of x_i x_j (i < j) is
  // a_i b_j + a_j b_i.
  QuadCode code = 0;
  for (int i = 0; i < n; ++i) {
    const bool ai = lin_has(n, l1, i);
    const bool bi = lin_has(n, l2, i);
    if (!ai && !bi) continue;
    for (int j = i + 1; j < n; ++j) {
      const bool c = (ai && lin_has(n, l2, j)) != (bi && lin_has(n, l1, j));
      if (c) code ^= quad_monomial(n, i, j);
    }
  }
  return code;
}

int quad_rank(int n, QuadCode code) noexcept {
  std::array<std::uint32_t, 16> rows{};
  int bit = quad_width(n) - 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, --bit) {
      if ((code >> bit) & 1u) {
        rows[i] ^= 1u << j;
        rows[j] ^= 1u << i;
      }
    }
  }
  int rank = 0;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = rank; r < n; ++r) {
      if ((rows[r] >> col) & 1u) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r != rank && ((rows[r] >> col) & 1u)) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

std::string quad_to_string(int n, QuadCode code) {
  if (code == 0) return "0";
  std::string s;
  for (auto [i, j] : decode_quad(n, code)) {
    if (!s.empty()) s += "+";
    s += "x" + std::to_string(i) + "x" + std::to_string(j);
  }
  return s;
}

std::string lin_to_string(int n, LinCode code) {
  if (code == 0) return "0";
  std::string s;
  for (int v : decode_lin(n, code)) {
    if (!s.empty()) s += "+";
    s += "x" + std::to_string(v);
  }
  return s;
}

}  // namespace qsynth
