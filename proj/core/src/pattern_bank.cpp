#include "qsynth/pattern_bank.hpp"

#include <unistd.h>

#include <algorithm>
#include <bit>
#include <string>
#include <tuple>

#include "qsynth/error.hpp"

namespace qsynth {

namespace {

void check_bank_width(int n) {
  if (n < kMinBits || n > kMaxBits) {
    throw Error(ErrorCode::UnsupportedSize, "pattern banks exist for 3 <= n <= 9, got " + std::to_string(n));
  }
}

std::size_t available_memory() {
  const long pages = ::sysconf(_SC_AVPHYS_PAGES);
  const long page_size = ::sysconf(_SC_PAGESIZE);
  if (pages <= 0 || page_size <= 0) return std::size_t{4} << 30;
  return static_cast<std::size_t>(pages) * static_cast<std::size_t>(page_size);
}

// Membership and rank over a set of codes. Codes of at most 28 bits use a
// dense bitmap with per-word prefix counts; wider codes fall back to binary
// search.
class CodeRank {
 public:
  CodeRank(std::span<const QuadCode> sorted, int width) : sorted_(sorted) {
    if (width > 28) return;
    const std::size_t words = (std::size_t{1} << width) / 64 + 1;
    bits_.assign(words, 0);
    prefix_.assign(words, 0);
    for (auto c : sorted) bits_[c >> 6] |= std::uint64_t{1} << (c & 63);
    std::uint32_t total = 0;
    for (std::size_t w = 0; w < words; ++w) {
      prefix_[w] = total;
      total += static_cast<std::uint32_t>(std::popcount(bits_[w]));
    }
  }

  bool contains(QuadCode c) const noexcept {
    if (!bits_.empty()) return (bits_[c >> 6] >> (c & 63)) & 1u;
    return std::binary_search(sorted_.begin(), sorted_.end(), c);
  }

  /// Position of c, which must be present.
  std::size_t rank(QuadCode c) const noexcept {
    if (!bits_.empty()) {
      const std::uint64_t below = bits_[c >> 6] & ((std::uint64_t{1} << (c & 63)) - 1);
      return prefix_[c >> 6] + static_cast<std::size_t>(std::popcount(below));
    }
    return static_cast<std::size_t>(std::lower_bound(sorted_.begin(), sorted_.end(), c) - sorted_.begin());
  }

 private:
  std::span<const QuadCode> sorted_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> prefix_;
};

template <typename Word>
std::vector<Word> collect_rank4_xors(const SetOp& set_op, const CodeRank& members) {
  const auto codes = set_op.codes();
  const std::size_t size = codes.size();
  std::vector<Word> xors;
  xors.reserve(size * (size - 1) / 2);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = a + 1; b < size; ++b) {
      const QuadCode x = codes[a] ^ codes[b];
      if (!members.contains(x)) xors.push_back(static_cast<Word>(x));
    }
  }
  return xors;
}

template <typename Word>
void count_keys(std::vector<Word> xors, std::vector<QuadCode>& keys, std::vector<std::uint64_t>& offsets) {
  std::sort(xors.begin(), xors.end());
  offsets.assign(1, 0);
  for (std::size_t i = 0; i < xors.size();) {
    std::size_t j = i;
    while (j < xors.size() && xors[j] == xors[i]) ++j;
    keys.push_back(static_cast<QuadCode>(xors[i]));
    offsets.push_back(offsets.back() + (j - i));
    i = j;
  }
}

}  // namespace

std::vector<PatternEntry> factorize_quadratic(int n, QuadCode q) {
  check_bank_width(n);
  std::vector<PatternEntry> options;
  if (q == 0) return options;
  const LinCode top = LinCode{1} << n;
  for (LinCode l1 = 1; l1 < top; ++l1) {
    for (LinCode l2 = l1 + 1; l2 < top; ++l2) {
      if (quad_part_of_product(n, l1, l2) == q) {
        options.push_back({q, l1, l2, lin_part_of_product(l1, l2)});
      }
    }
  }
  return options;
}

PatternEntry canonical_factorization(int n, QuadCode q) {
  check_bank_width(n);
  const LinCode top = LinCode{1} << n;
  for (LinCode l1 = 1; l1 < top; ++l1) {
    for (LinCode l2 = l1 + 1; l2 < top; ++l2) {
      if (q != 0 && quad_part_of_product(n, l1, l2) == q) return {q, l1, l2, lin_part_of_product(l1, l2)};
    }
  }
  throw Error(ErrorCode::NotOneAndRealizable, quad_to_string(n, q) + " is not the quadratic part of one product");
}

SetOp::SetOp(int n, std::vector<PatternEntry> entries) : n_(n), entries_(std::move(entries)) {
  codes_.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!codes_.empty() && e.code <= codes_.back()) {
      throw Error(ErrorCode::InvalidArgument, "SetOp entries must be sorted by strictly increasing code");
    }
    codes_.push_back(e.code);
  }
}

std::optional<PatternIndex> SetOp::find(QuadCode code) const noexcept {
  auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) return std::nullopt;
  return static_cast<PatternIndex>(it - codes_.begin());
}

SetOp build_set_op(int n) {
  check_bank_width(n);
  const LinCode top = LinCode{1} << n;
  std::vector<PatternEntry> all;
  all.reserve(static_cast<std::size_t>(top) * top / 2);
  // l1 ascending then l2 ascending, so after a stable sort by code the first
  // entry of each run is the lexicographically smallest factorization.
  for (LinCode l1 = 1; l1 < top; ++l1) {
    for (LinCode l2 = l1 + 1; l2 < top; ++l2) {
      const QuadCode q = quad_part_of_product(n, l1, l2);
      if (q != 0) all.push_back({q, l1, l2, lin_part_of_product(l1, l2)});
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.code < b.code; });
  auto last = std::unique(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.code == b.code; });
  all.erase(last, all.end());
  return SetOp(n, std::move(all));
}

MapXor::MapXor(int n, std::vector<QuadCode> keys, std::vector<std::uint64_t> offsets, std::vector<IndexPair> pairs)
    : n_(n), keys_(std::move(keys)), offsets_(std::move(offsets)), pairs_(std::move(pairs)) {
  if (offsets_.size() != keys_.size() + 1 || offsets_.back() != pairs_.size()) {
    throw Error(ErrorCode::InvalidArgument, "MapXor offsets do not match keys/pairs");
  }
}

std::span<const IndexPair> MapXor::find(QuadCode key) const noexcept {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return {};
  return pairs_at(static_cast<std::size_t>(it - keys_.begin()));
}

std::size_t estimate_map_build_bytes(const SetOp& set_op) {
  const std::size_t size = set_op.size();
  const std::size_t pairs = size * (size > 0 ? size - 1 : 0) / 2;
  const std::size_t word = quad_width(set_op.n()) <= 32 ? 4 : 8;
  const std::size_t bitmap = quad_width(set_op.n()) <= 28 ? (std::size_t{3} << quad_width(set_op.n())) / 32 : 0;
  // Pass 1 holds every XOR; pass 2 holds the pair array plus keys/offsets
  // (at most one key per pair).
  const std::size_t pass1 = pairs * word + bitmap;
  const std::size_t pass2 = pairs * sizeof(IndexPair) + pairs * (sizeof(QuadCode) + 8) / 4 + bitmap;
  return std::max(pass1, pass2);
}

MapXor build_map_xor(const SetOp& set_op, const MapBuildOptions& options) {
  const int n = set_op.n();
  check_bank_width(n);
  const std::size_t budget = options.memory_budget_bytes ? options.memory_budget_bytes : available_memory();
  const std::size_t needed = estimate_map_build_bytes(set_op);
  if (needed > budget) {
    throw Error(ErrorCode::MemoryBudgetExceeded, "MapXor for n=" + std::to_string(n) + " needs about " +
                                                     std::to_string(needed >> 20) + " MiB, budget is " +
                                                     std::to_string(budget >> 20) + " MiB");
  }

  const int width = quad_width(n);
  std::vector<QuadCode> keys;
  std::vector<std::uint64_t> offsets;
  {
    const CodeRank members(set_op.codes(), width);
    if (width <= 32) {
      count_keys(collect_rank4_xors<std::uint32_t>(set_op, members), keys, offsets);
    } else {
      count_keys(collect_rank4_xors<std::uint64_t>(set_op, members), keys, offsets);
    }
  }

  // Second pass: place each pair at its key's cursor. Iterating a then b in
  // ascending order leaves every pair list sorted.
  std::vector<IndexPair> pairs(offsets.back());
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  const CodeRank members(set_op.codes(), width);
  const CodeRank key_rank(keys, width);
  const auto codes = set_op.codes();
  const std::size_t size = codes.size();
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = a + 1; b < size; ++b) {
      const QuadCode x = codes[a] ^ codes[b];
      if (members.contains(x)) continue;
      pairs[cursor[key_rank.rank(x)]++] = {static_cast<PatternIndex>(a), static_cast<PatternIndex>(b)};
    }
  }
  return MapXor(n, std::move(keys), std::move(offsets), std::move(pairs));
}

PatternBank make_bank(int n, bool with_map, const MapBuildOptions& options) {
  PatternBank bank{build_set_op(n), std::nullopt};
  if (with_map) bank.map_xor = build_map_xor(bank.set_op, options);
  return bank;
}

CountEstimates count_estimates(int n, const MapXor* map_xor) {
  if (n < 2 || n > 11) throw Error(ErrorCode::UnsupportedSize, "count estimates need 2 <= n <= 11");
  CountEstimates out;
  out.n = n;
  out.n1_log2 = std::uint64_t{1} << n;
  out.n2_log2 = static_cast<std::uint64_t>(quad_width(n));
  out.n4 = static_cast<std::uint64_t>(quad_width(n));
  if (map_xor != nullptr) out.n3 = map_xor->key_count();
  return out;
}

std::map<std::size_t, std::size_t> adjacency_histogram(const MapXor& map_xor) {
  std::map<std::size_t, std::size_t> histogram;
  for (std::size_t i = 0; i < map_xor.key_count(); ++i) ++histogram[map_xor.pairs_at(i).size()];
  return histogram;
}

}  // namespace qsynth
