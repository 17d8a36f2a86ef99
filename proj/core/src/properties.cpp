#include "qsynth/properties.hpp"

#include <bit>
#include <cstdlib>
#include <vector>

#include "qsynth/error.hpp"

namespace qsynth {

namespace {

void require_square(const Lut& lut) {
  if (lut.n() != lut.m()) throw Error(ErrorCode::InvalidArgument, "property requires m = n");
}

}  // namespace

int differential_uniformity(const Lut& lut) {
  require_square(lut);
  const std::size_t size = lut.size();
  std::vector<int> row(size);
  int best = 0;
  for (std::size_t a = 1; a < size; ++a) {
    std::fill(row.begin(), row.end(), 0);
    for (std::size_t x = 0; x < size; ++x) ++row[lut[x] ^ lut[x ^ a]];
    for (int c : row) best = std::max(best, c);
  }
  return best;
}

int linearity(const Lut& lut) {
  require_square(lut);
  const std::size_t size = lut.size();
  std::vector<int> spectrum(size);
  int best = 0;
  for (std::size_t a = 1; a < size; ++a) {
    for (std::size_t x = 0; x < size; ++x) {
      spectrum[x] = (std::popcount(static_cast<std::uint32_t>(a & lut[x])) & 1) ? -1 : 1;
    }
    // Fast Walsh-Hadamard transform of the component a.S.
    for (std::size_t h = 1; h < size; h <<= 1) {
      for (std::size_t i = 0; i < size; i += 2 * h) {
        for (std::size_t j = i; j < i + h; ++j) {
          const int u = spectrum[j];
          const int v = spectrum[j + h];
          spectrum[j] = u + v;
          spectrum[j + h] = u - v;
        }
      }
    }
    for (int w : spectrum) best = std::max(best, std::abs(w));
  }
  return best;
}

bool is_bijective(const Lut& lut) {
  require_square(lut);
  std::vector<bool> seen(lut.size(), false);
  for (auto v : lut.values()) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace qsynth
