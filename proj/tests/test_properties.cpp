#include <random>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "qsynth/circuit.hpp"
#include "qsynth/lin_solver.hpp"
#include "qsynth/nl_solver.hpp"

using namespace qsynth;

namespace {

struct Outcome {
  NlResult nl;
  StraightLineProgram slp;
};

Outcome run(const Lut& lut, const PatternBank& bank, const SearchLimits& limits = {}) {
  const TruncatedAnf tanf = truncate(lut);
  Outcome o{solve_nonlinear(tanf, bank, limits), {}};
  const NlSolution& s = o.nl.solutions.front();
  o.slp = assemble(tanf, s, solve_linear(derive_linear_requirements(s, tanf)));
  return o;
}

void check_invariants(const Lut& lut, const Outcome& o, const std::vector<std::uint64_t>& rows) {
  const TruncatedAnf tanf = truncate(lut);
  for (const auto& s : o.nl.solutions) REQUIRE(check_solution(s, tanf));
  REQUIRE(verify_against_lut(o.slp, lut));
  const GateCounts c = gate_counts(o.slp);
  CHECK(c.and_count == o.nl.solutions.front().ops.size());
  CHECK(and_depth(o.slp) == (c.and_count > 0 ? 1 : 0));
  CHECK(static_cast<int>(c.and_count) >= oracle::gf2_rank(rows));
}

}  // namespace

TEST_CASE("random four-bit S-boxes match the subset oracle") {
  const PatternBank bank = make_bank(4, true);
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::uint64_t> rows;
    const Lut lut(4, 4, oracle::random_quadratic(4, rng, rows));
    const Outcome o = run(lut, bank);
    check_invariants(lut, o, rows);
    const int best = oracle::min_and_by_subsets(4, rows, 8);
    REQUIRE(best >= 0);
    CHECK(o.nl.and_count() == static_cast<std::size_t>(best));
    CHECK(o.nl.proved_optimal());
  }
}

TEST_CASE("random five-bit S-boxes match the extension oracle") {
  const PatternBank bank = make_bank(5, true);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::uint64_t> rows;
    const Lut lut(5, 5, oracle::random_quadratic(5, rng, rows));
    const Outcome o = run(lut, bank);
    check_invariants(lut, o, rows);
    CHECK(o.nl.and_count() == static_cast<std::size_t>(oracle::min_and_by_extension(5, rows)));
  }
}

TEST_CASE("the two oracles agree on four bits") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    std::vector<std::uint64_t> rows;
    oracle::random_quadratic(4, rng, rows);
    CHECK(oracle::min_and_by_subsets(4, rows, 8) == oracle::min_and_by_extension(4, rows));
  }
}

TEST_CASE("pruning never changes the optimum") {
  std::mt19937_64 rng(123);
  for (int n = 4; n <= 5; ++n) {
    const PatternBank bank = make_bank(n, true);
    SearchLimits plain;
    plain.use_lower_bound = false;
    for (int t = 0; t < (n == 4 ? 40 : 8); ++t) {
      std::vector<std::uint64_t> rows;
      const Lut lut(n, n, oracle::random_quadratic(n, rng, rows));
      const TruncatedAnf tanf = truncate(lut);
      const NlResult with = solve_nonlinear(tanf, bank);
      const NlResult without = solve_nonlinear(tanf, bank, plain);
      CHECK(with.and_count() == without.and_count());
      CHECK(check_solution(without.solutions.front(), tanf));
    }
  }
}

TEST_CASE("fixed seed and one worker are deterministic") {
  std::mt19937_64 rng(8);
  for (int n = 4; n <= 6; ++n) {
    const PatternBank bank = make_bank(n, true);
    for (int t = 0; t < 3; ++t) {
      std::vector<std::uint64_t> rows;
      const Lut lut(n, n, oracle::random_quadratic(n, rng, rows));
      SearchLimits limits;
      limits.seed = 17;
      limits.solmax = 2;
      const Outcome a = run(lut, bank, limits);
      const Outcome b = run(lut, bank, limits);
      CHECK(a.nl.solutions == b.nl.solutions);
      CHECK(emit_gatelist(a.slp) == emit_gatelist(b.slp));
    }
  }
}

TEST_CASE("several workers agree with one on the optimum") {
  const PatternBank bank = make_bank(5, true);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 10; ++t) {
    std::vector<std::uint64_t> rows;
    const Lut lut(5, 5, oracle::random_quadratic(5, rng, rows));
    SearchLimits many;
    many.worker_count = 4;
    const TruncatedAnf tanf = truncate(lut);
    const NlResult a = solve_nonlinear(tanf, bank);
    const NlResult b = solve_nonlinear(tanf, bank, many);
    CHECK(a.and_count() == b.and_count());
    CHECK(check_solution(b.solutions.front(), tanf));
  }
}

TEST_CASE("six- and seven-bit random S-boxes stay sound") {
  std::mt19937_64 rng(64);
  for (int n = 6; n <= 7; ++n) {
    const PatternBank bank = make_bank(n, n <= 6);
    SearchLimits limits;
    limits.time_budget = std::chrono::milliseconds(1500);
    for (int t = 0; t < 3; ++t) {
      std::vector<std::uint64_t> rows;
      const Lut lut(n, n, oracle::random_quadratic(n, rng, rows));
      const Outcome o = run(lut, bank, limits);
      check_invariants(lut, o, rows);
    }
  }
}
