#include "qsynth/generators.hpp"

#include "qsynth/error.hpp"

namespace qsynth {

namespace {

void check_range(int n) {
  if (n < kMinBits || n > kMaxBits) {
    throw Error(ErrorCode::UnsupportedSize, "generator width " + std::to_string(n) + " outside 3..9");
  }
}

std::uint32_t gf2n_pow(std::uint32_t x, std::uint64_t e, int n, std::uint32_t poly) {
  std::uint32_t result = 1;
  while (e != 0) {
    if (e & 1u) result = gf2n_mul(result, x, n, poly);
    x = gf2n_mul(x, x, n, poly);
    e >>= 1;
  }
  return result;
}

}  // namespace

Lut gen_chi(int n) {
  check_range(n);
  std::vector<std::uint32_t> values(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < values.size(); ++x) {
    std::uint32_t y = 0;
    for (int i = 0; i < n; ++i) {
      const std::uint32_t xi = (x >> i) & 1u;
      const std::uint32_t x1 = (x >> ((i + 1) % n)) & 1u;
      const std::uint32_t x2 = (x >> ((i + 2) % n)) & 1u;
      y |= (xi ^ ((x1 ^ 1u) & x2)) << i;
    }
    values[x] = y;
  }
  return Lut(n, n, std::move(values));
}

std::uint32_t default_field_poly(int n) {
  switch (n) {
    case 3: return 0b1011;          // X^3+X+1
    case 4: return 0b10011;         // X^4+X+1
    case 5: return 0b100101;        // X^5+X^2+1
    case 6: return 0b1010111;       // X^6+X^4+X^2+X+1
    case 7: return 0b10000011;      // X^7+X+1
    case 8: return 0b100011101;     // X^8+X^4+X^3+X^2+1
    case 9: return 0b1000010001;    // X^9+X^4+1
    default: throw Error(ErrorCode::UnsupportedSize, "no default field polynomial for n=" + std::to_string(n));
  }
}

std::uint32_t gf2n_mul(std::uint32_t a, std::uint32_t b, int n, std::uint32_t field_poly) noexcept {
  std::uint32_t result = 0;
  const std::uint32_t top = 1u << n;
  while (b != 0) {
    if (b & 1u) result ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= field_poly;
  }
  return result;
}

Lut gen_power_map(int n, std::uint64_t exponent, std::uint32_t field_poly) {
  const std::uint64_t e[] = {exponent};
  return gen_power_sum(n, e, field_poly);
}

Lut gen_power_sum(int n, std::span<const std::uint64_t> exponents, std::uint32_t field_poly) {
  check_range(n);
  if ((field_poly >> n) != 1u) {
    throw Error(ErrorCode::InvalidArgument, "field polynomial must have degree exactly n");
  }
  std::vector<std::uint32_t> values(std::size_t{1} << n, 0);
  for (std::uint32_t x = 0; x < values.size(); ++x) {
    for (auto e : exponents) values[x] ^= (e == 0) ? 1u : gf2n_pow(x, e, n, field_poly);
  }
  return Lut(n, n, std::move(values));
}

Lut gen_ascon() {
  return Lut(5, 5, {0x04, 0x0b, 0x1f, 0x14, 0x1a, 0x15, 0x09, 0x02, 0x1b, 0x05, 0x08,
                    0x12, 0x1d, 0x03, 0x06, 0x1c, 0x1e, 0x13, 0x07, 0x0e, 0x00, 0x0d,
                    0x11, 0x18, 0x10, 0x0c, 0x01, 0x19, 0x16, 0x0a, 0x0f, 0x17});
}

}  // namespace qsynth
