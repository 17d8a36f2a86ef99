#pragma once

// Non-linear phase: choose a small set of 1-AND patterns whose GF(2) span
// contains the quadratic part of every output bit.

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qsynth/anf.hpp"
#include "qsynth/pattern_bank.hpp"

namespace qsynth {

struct SearchLimits {
  std::optional<int> nb_and_max;
  std::size_t nb_quad_max = 20000;
  /// Random permutations per initialization size (pair, triple, quadruple).
  /// Unset selects default_perm_caps(n).
  std::optional<std::array<std::size_t, 3>> nb_perm_max;
  std::optional<std::chrono::milliseconds> time_budget;
  std::size_t solmax = 1;
  std::uint64_t seed = 0;
  unsigned worker_count = 1;
  /// Candidates expanded per node by the heuristic search.
  std::size_t branch_width = 4;
  /// Inputs with n up to this value get the exhaustive search.
  int exhaustive_max_n = 7;
  /// Turning this off keeps only the bound needed for termination; used to
  /// check that pruning never changes the optimum.
  bool use_lower_bound = true;
};

/// Defaults: n = 8 -> {50, 10, 5}, n = 9 -> {50, 5, 2}; smaller n uses the
/// n = 8 caps for its warm-start phase.
std::array<std::size_t, 3> default_perm_caps(int n);

struct NlSolution {
  std::vector<PatternEntry> ops;
  /// combos[i] bit t set: ops[t] contributes to output bit i.
  std::vector<std::uint64_t> combos;

  std::size_t and_count() const noexcept { return ops.size(); }
  friend bool operator==(const NlSolution&, const NlSolution&) = default;
};

/// True when every row's quadratic part equals the XOR of its selected ops.
bool check_solution(const NlSolution& solution, const TruncatedAnf& tanf);

enum class SearchStatus {
  Optimal,               // exhaustive search closed the gap to the bound
  BestFound,             // heuristic search finished its work items
  TimeBudgetExhausted,   // stopped early; solutions are the best so far
};

struct NlResult {
  std::vector<NlSolution> solutions;
  SearchStatus status = SearchStatus::BestFound;
  int lower_bound = 0;
  std::uint64_t nodes = 0;

  bool proved_optimal() const noexcept { return status == SearchStatus::Optimal; }
  std::size_t and_count() const noexcept { return solutions.empty() ? 0 : solutions.front().and_count(); }
};

struct XorCandidate {
  /// Bit t set: op_selec[t] is reused.
  std::uint64_t reused = 0;
  /// New SetOp indices, ascending.
  std::vector<PatternIndex> added;

  friend bool operator==(const XorCandidate&, const XorCandidate&) = default;
  friend auto operator<=>(const XorCandidate&, const XorCandidate&) = default;
};

struct TestXorOptions {
  std::size_t nb_quad_max = 20000;
  std::uint64_t seed = 0;
  int max_k = 8;
  std::size_t max_subsets = 1'000'000;
};

/// Every subset T of op_selec with |T| = k and set U of j SetOp entries with
/// XOR(T) ^ XOR(U) = y. j = 4 is sampled unless the pair space is small.
/// Past the subset caps, T is recovered from a span test instead of
/// enumerated, which assumes op_selec is linearly independent.
std::vector<XorCandidate> test_xor(std::span<const QuadCode> op_selec, QuadCode y, int k, int j,
                                   const PatternBank& bank, const TestXorOptions& options = {});

struct BitCost {
  int cost = 0;
  std::vector<std::vector<PatternIndex>> init_sets;
};

/// Fewest SetOp entries XORing to y, with the realizing sets. Throws
/// CostExceedsFour beyond quadruples.
BitCost bit_cost(QuadCode y, const PatternBank& bank, const TestXorOptions& options = {});

/// Admissible bound on the patterns still needed to cover rows given op_selec.
int lower_bound_remaining(int n, std::span<const QuadCode> op_selec, std::span<const QuadCode> rows);

/// Throws InvalidArgument on a size mismatch, NoSolutionWithinBound when no
/// solution fits nb_and_max, TimeBudgetExhausted when time ran out first.
NlResult solve_nonlinear(const TruncatedAnf& tanf, const PatternBank& bank, const SearchLimits& limits = {});

/// AND count of a greedy pass (first candidate per row, no backtracking)
/// treating rows in the given order.
int greedy_and_count(const TruncatedAnf& tanf, const PatternBank& bank, std::span<const int> order);

std::pair<int, int> order_sensitivity_probe(const TruncatedAnf& tanf, const PatternBank& bank,
                                            std::span<const int> order_a, std::span<const int> order_b);

}  // namespace qsynth
