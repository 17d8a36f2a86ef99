#pragma once

// Bit-packed encodings of purely quadratic and purely linear polynomials.
//
// QuadCode: one bit per quadratic monomial x_i x_j (i < j). Monomials are
// ordered lexicographically (x0x1, x0x2, ..., x_{n-2}x_{n-1}) and the first
// one is the most significant of the T = n(n-1)/2 bits.
//
// LinCode: one bit per variable, x0 is the most significant of n bits.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qsynth {

using QuadCode = std::uint64_t;
using LinCode = std::uint32_t;

inline constexpr int kMinBits = 3;
inline constexpr int kMaxBits = 9;

constexpr int quad_width(int n) noexcept { return n * (n - 1) / 2; }

/// Lexicographic rank of x_i x_j among the quadratic monomials, i != j.
constexpr int monomial_index(int n, int i, int j) noexcept {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

constexpr QuadCode quad_monomial(int n, int i, int j) noexcept {
  return QuadCode{1} << (quad_width(n) - 1 - monomial_index(n, i, j));
}

constexpr LinCode lin_var(int n, int i) noexcept { return LinCode{1} << (n - 1 - i); }

constexpr bool lin_has(int n, LinCode l, int i) noexcept { return (l >> (n - 1 - i)) & 1u; }

QuadCode encode_quad(int n, std::span<const std::pair<int, int>> monomials);
std::vector<std::pair<int, int>> decode_quad(int n, QuadCode code);

LinCode encode_lin(int n, std::span<const int> variables);
std::vector<int> decode_lin(int n, LinCode code);

/// Quadratic part of l1 * l2 (both constant-free).
QuadCode quad_part_of_product(int n, LinCode l1, LinCode l2) noexcept;

/// Linear part of l1 * l2: x_i * x_i = x_i for every shared variable.
constexpr LinCode lin_part_of_product(LinCode l1, LinCode l2) noexcept { return l1 & l2; }

/// Rank of the alternating bilinear form attached to a quadratic polynomial.
/// A purely quadratic polynomial of rank 2r is a XOR of exactly r (and no
/// fewer) products of two linear forms.
int quad_rank(int n, QuadCode code) noexcept;

std::string quad_to_string(int n, QuadCode code);
std::string lin_to_string(int n, LinCode code);

}  // namespace qsynth
