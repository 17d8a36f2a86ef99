#pragma once

// Static tables driving the non-linear search:
//   SetOp  - every nonzero quadratic part reachable with one AND gate, i.e.
//            quad(l1 * l2) for constant-free linear l1, l2, with a
//            canonical factorization;
//   MapXor - for every XOR of two SetOp codes that is not itself in SetOp,
//            the list of index pairs producing it.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qsynth/codes.hpp"

namespace qsynth {

using PatternIndex = std::uint32_t;

struct PatternEntry {
  QuadCode code = 0;
  LinCode l1 = 0;
  LinCode l2 = 0;
  LinCode residual = 0;  // linear part of l1 * l2

  friend bool operator==(const PatternEntry&, const PatternEntry&) = default;
};

/// All constant-free factorizations (l1 < l2) of q, lexicographically
/// sorted; the first is the canonical one. Empty when q needs several ANDs.
std::vector<PatternEntry> factorize_quadratic(int n, QuadCode q);

/// Lexicographically smallest factorization; throws NotOneAndRealizable.
PatternEntry canonical_factorization(int n, QuadCode q);

class SetOp {
 public:
  SetOp() = default;
  /// Entries must be sorted by strictly increasing code.
  SetOp(int n, std::vector<PatternEntry> entries);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const PatternEntry& operator[](std::size_t i) const noexcept { return entries_[i]; }
  std::span<const PatternEntry> entries() const noexcept { return entries_; }
  std::span<const QuadCode> codes() const noexcept { return codes_; }

  std::optional<PatternIndex> find(QuadCode code) const noexcept;
  bool contains(QuadCode code) const noexcept { return find(code).has_value(); }

  friend bool operator==(const SetOp& a, const SetOp& b) { return a.n_ == b.n_ && a.entries_ == b.entries_; }

 private:
  int n_ = 0;
  std::vector<PatternEntry> entries_;
  std::vector<QuadCode> codes_;
};

SetOp build_set_op(int n);

struct IndexPair {
  PatternIndex a = 0;
  PatternIndex b = 0;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

class MapXor {
 public:
  MapXor() = default;
  /// pairs for key i live in [offsets[i], offsets[i+1]).
  MapXor(int n, std::vector<QuadCode> keys, std::vector<std::uint64_t> offsets, std::vector<IndexPair> pairs);

  int n() const noexcept { return n_; }
  std::size_t key_count() const noexcept { return keys_.size(); }
  std::size_t pair_count() const noexcept { return pairs_.size(); }
  std::span<const QuadCode> keys() const noexcept { return keys_; }

  QuadCode key(std::size_t i) const noexcept { return keys_[i]; }
  std::span<const IndexPair> pairs_at(std::size_t i) const noexcept {
    return {pairs_.data() + offsets_[i], pairs_.data() + offsets_[i + 1]};
  }
  /// Empty span when the key is absent.
  std::span<const IndexPair> find(QuadCode key) const noexcept;

  friend bool operator==(const MapXor& a, const MapXor& b) {
    return a.n_ == b.n_ && a.keys_ == b.keys_ && a.offsets_ == b.offsets_ && a.pairs_ == b.pairs_;
  }

 private:
  int n_ = 0;
  std::vector<QuadCode> keys_;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<IndexPair> pairs_;
};

struct MapBuildOptions {
  /// 0 selects the currently available physical memory.
  std::size_t memory_budget_bytes = 0;
};

/// Peak bytes the two-pass construction needs for this SetOp.
std::size_t estimate_map_build_bytes(const SetOp& set_op);

/// Throws Error(MemoryBudgetExceeded) before allocating when the estimate
/// exceeds the budget.
MapXor build_map_xor(const SetOp& set_op, const MapBuildOptions& options = {});

struct PatternBank {
  SetOp set_op;
  std::optional<MapXor> map_xor;

  int n() const noexcept { return set_op.n(); }
  bool has_map() const noexcept { return map_xor.has_value(); }
};

PatternBank make_bank(int n, bool with_map, const MapBuildOptions& options = {});

inline constexpr std::uint32_t kBankFormatVersion = 1;

void save_bank(const SetOp& set_op, const MapXor& map_xor, const std::filesystem::path& path);
/// Throws BadMagic, VersionMismatch, TruncatedFile or WrongN.
PatternBank load_bank(int n, const std::filesystem::path& path);

std::filesystem::path default_bank_path(const std::filesystem::path& dir, int n);

/// Sizes of the four candidate precomputation universes. N1 and N2 are
/// powers of two and are reported by exponent.
struct CountEstimates {
  int n = 0;
  std::uint64_t n1_log2 = 0;  // all n-bit Boolean functions
  std::uint64_t n2_log2 = 0;  // all purely quadratic polynomials
  std::optional<std::uint64_t> n3;  // measured MapXor key count
  std::uint64_t n4 = 0;       // quadratic monomials
};

CountEstimates count_estimates(int n, const MapXor* map_xor = nullptr);

/// pairs-per-key -> number of keys.
std::map<std::size_t, std::size_t> adjacency_histogram(const MapXor& map_xor);

}  // namespace qsynth
