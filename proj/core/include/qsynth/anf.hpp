#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsynth/codes.hpp"

namespace qsynth {

/// Value table of an n-bit to m-bit S-box. Bit i of an input is x_i, bit i
/// of a value is y_i.
class Lut {
 public:
  Lut() = default;
  /// Validates 1 <= n <= 16, |values| = 2^n and every value < 2^m.
  Lut(int n, int m, std::vector<std::uint32_t> values);
  /// Infers n from the table length, m = n.
  static Lut from_values(std::vector<std::uint32_t> values);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::uint32_t operator[](std::size_t x) const noexcept { return values_[x]; }
  std::span<const std::uint32_t> values() const noexcept { return values_; }

  friend bool operator==(const Lut&, const Lut&) = default;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::uint32_t> values_;
};

/// Algebraic normal form: one coefficient vector of 2^n bits per output bit.
/// Bit i of word j of a row marks the monomial x^(32j+i).
class Anf {
 public:
  Anf() = default;
  Anf(int n, int m);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }

  bool coefficient(int row, std::uint32_t u) const noexcept {
    return (rows_[row][u >> 5] >> (u & 31)) & 1u;
  }
  void set_coefficient(int row, std::uint32_t u, bool value) noexcept {
    const std::uint32_t mask = 1u << (u & 31);
    if (value) {
      rows_[row][u >> 5] |= mask;
    } else {
      rows_[row][u >> 5] &= ~mask;
    }
  }
  void flip(int row, std::uint32_t u) noexcept { rows_[row][u >> 5] ^= 1u << (u & 31); }

  std::span<const std::uint32_t> row_words(int row) const noexcept { return rows_[row]; }

  friend bool operator==(const Anf&, const Anf&) = default;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<std::uint32_t>> rows_;
};

Anf lut_to_anf(const Lut& lut);
Lut anf_to_lut(const Anf& anf);

/// Largest monomial weight over all rows; 0 for constant functions.
int algebraic_degree(const Anf& anf);

struct TruncatedRow {
  QuadCode quad = 0;
  LinCode lin = 0;
  bool constant = false;

  friend bool operator==(const TruncatedRow&, const TruncatedRow&) = default;
};

/// Per output bit: quadratic part (one row of Y), linear part, constant.
struct TruncatedAnf {
  int n = 0;
  int m = 0;
  std::vector<TruncatedRow> rows;

  std::vector<QuadCode> quad_rows() const;
};

/// Throws Error(DegreeTooHigh) when the ANF has degree > 2.
TruncatedAnf truncate(const Anf& anf);

/// Rebuilds the full ANF of a degree-<=2 function.
Anf recombine(const TruncatedAnf& tanf);

inline TruncatedAnf truncate(const Lut& lut) { return truncate(lut_to_anf(lut)); }

}  // namespace qsynth
