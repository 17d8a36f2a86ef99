#pragma once

#include <cstdint>
#include <span>

#include "qsynth/anf.hpp"

namespace qsynth {

/// chi_n: y_i = x_i ^ ((x_{i+1} ^ 1) & x_{i+2}), indices mod n.
Lut gen_chi(int n);

/// Field polynomial mask including the X^n term, e.g. X^5+X^2+1 -> 0x25.
/// Defaults are the polynomials used for the published power-map tables.
std::uint32_t default_field_poly(int n);

/// Multiplication in GF(2^n) modulo field_poly. Irreducibility is the
/// caller's responsibility.
std::uint32_t gf2n_mul(std::uint32_t a, std::uint32_t b, int n, std::uint32_t field_poly) noexcept;

/// x -> x^e in GF(2^n).
Lut gen_power_map(int n, std::uint64_t exponent, std::uint32_t field_poly);

/// x -> XOR over e of x^e in GF(2^n).
Lut gen_power_sum(int n, std::span<const std::uint64_t> exponents, std::uint32_t field_poly);

/// The ASCON 5-bit S-box as a value table.
Lut gen_ascon();

}  // namespace qsynth
