#include "qsynth/anf.hpp"

#include <bit>

#include "qsynth/error.hpp"

namespace qsynth {

namespace {

constexpr int kMaxLutBits = 16;

std::size_t words_for(int n) { return ((std::size_t{1} << n) + 31) / 32; }

// In-place binary Moebius transform; it is its own inverse.
void moebius(std::vector<std::uint8_t>& f) {
  const std::size_t size = f.size();
  for (std::size_t step = 1; step < size; step <<= 1) {
    for (std::size_t x = 0; x < size; ++x) {
      if (x & step) f[x] ^= f[x ^ step];
    }
  }
}

}  // namespace

Lut::Lut(int n, int m, std::vector<std::uint32_t> values) : n_(n), m_(m), values_(std::move(values)) {
  if (n < 1 || n > kMaxLutBits) throw Error(ErrorCode::UnsupportedSize, "LUT input width " + std::to_string(n));
  if (m < 1 || m > 32) throw Error(ErrorCode::InvalidArgument, "LUT output width " + std::to_string(m));
  if (values_.size() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::InvalidArgument, "LUT has " + std::to_string(values_.size()) +
                                                " entries, expected 2^" + std::to_string(n));
  }
  if (m < 32) {
    for (auto v : values_) {
      if (v >> m) throw Error(ErrorCode::InvalidArgument, "LUT value " + std::to_string(v) + " exceeds output width");
    }
  }
}

Lut Lut::from_values(std::vector<std::uint32_t> values) {
  const std::size_t size = values.size();
  if (size < 2 || !std::has_single_bit(size)) {
    throw Error(ErrorCode::InvalidArgument, "LUT length must be a power of two, got " + std::to_string(size));
  }
  const int n = std::countr_zero(size);
  return Lut(n, n, std::move(values));
}

Anf::Anf(int n, int m) : n_(n), m_(m), rows_(m, std::vector<std::uint32_t>(words_for(n), 0)) {}

Anf lut_to_anf(const Lut& lut) {
  Anf anf(lut.n(), lut.m());
  std::vector<std::uint8_t> column(lut.size());
  for (int row = 0; row < lut.m(); ++row) {
    for (std::size_t x = 0; x < lut.size(); ++x) column[x] = (lut[x] >> row) & 1u;
    moebius(column);
    for (std::size_t u = 0; u < column.size(); ++u) {
      if (column[u]) anf.flip(row, static_cast<std::uint32_t>(u));
    }
  }
  return anf;
}

Lut anf_to_lut(const Anf& anf) {
  const std::size_t size = std::size_t{1} << anf.n();
  std::vector<std::uint32_t> values(size, 0);
  std::vector<std::uint8_t> column(size);
  for (int row = 0; row < anf.m(); ++row) {
    for (std::size_t u = 0; u < size; ++u) column[u] = anf.coefficient(row, static_cast<std::uint32_t>(u));
    moebius(column);
    for (std::size_t x = 0; x < size; ++x) values[x] |= std::uint32_t{column[x]} << row;
  }
  return Lut(anf.n(), anf.m(), std::move(values));
}

int algebraic_degree(const Anf& anf) {
  int degree = 0;
  const std::uint32_t size = 1u << anf.n();
  for (int row = 0; row < anf.m(); ++row) {
    for (std::uint32_t u = 0; u < size; ++u) {
      if (anf.coefficient(row, u)) degree = std::max(degree, std::popcount(u));
    }
  }
  return degree;
}

std::vector<QuadCode> TruncatedAnf::quad_rows() const {
  std::vector<QuadCode> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.quad);
  return out;
}

TruncatedAnf truncate(const Anf& anf) {
  const int n = anf.n();
  if (n > kMaxBits) throw Error(ErrorCode::UnsupportedSize, "synthesis supports at most 9 input bits");
  const int degree = algebraic_degree(anf);
  if (degree > 2) {
    throw Error(ErrorCode::DegreeTooHigh,
                "algebraic degree " + std::to_string(degree) + " > 2; only quadratic S-boxes are supported");
  }
  TruncatedAnf out{n, anf.m(), {}};
  out.rows.resize(anf.m());
  const std::uint32_t size = 1u << n;
  for (int row = 0; row < anf.m(); ++row) {
    auto& r = out.rows[row];
    for (std::uint32_t u = 0; u < size; ++u) {
      if (!anf.coefficient(row, u)) continue;
      switch (std::popcount(u)) {
        case 0: r.constant = true; break;
        case 1: r.lin ^= lin_var(n, std::countr_zero(u)); break;
        default: {
          const int i = std::countr_zero(u);
          const int j = std::countr_zero(u & (u - 1));
          r.quad ^= quad_monomial(n, i, j);
        }
      }
    }
  }
  return out;
}

Anf recombine(const TruncatedAnf& tanf) {
  Anf anf(tanf.n, tanf.m);
  const int n = tanf.n;
  for (int row = 0; row < tanf.m; ++row) {
    const auto& r = tanf.rows[row];
    if (r.constant) anf.flip(row, 0);
    for (int i = 0; i < n; ++i) {
      if (lin_has(n, r.lin, i)) anf.flip(row, 1u << i);
    }
    for (auto [i, j] : decode_quad(n, r.quad)) anf.flip(row, (1u << i) | (1u << j));
  }
  return anf;
}

}  // namespace qsynth
