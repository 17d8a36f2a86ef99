#pragma once

// Linear phase: compute every linear form the circuit needs with few XORs.

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "qsynth/anf.hpp"
#include "qsynth/nl_solver.hpp"

namespace qsynth {

enum LinSource : unsigned {
  kOutputLinearPart = 1u << 0,  // linear part of an output bit
  kFactor = 1u << 1,            // l1 or l2 of a selected op
  kResidual = 1u << 2,          // linear part of a selected op's product
};

struct LinForm {
  LinCode code = 0;
  unsigned sources = 0;  // LinSource bits

  friend bool operator==(const LinForm&, const LinForm&) = default;
};

/// Required forms of weight >= 2, ascending by code.
struct LinRequirements {
  int n = 0;
  std::vector<LinForm> forms;

  std::vector<LinCode> weight_two() const;
  std::vector<LinCode> heavy() const;
  bool contains(LinCode code) const;
};

LinRequirements derive_linear_requirements(const NlSolution& solution, const TruncatedAnf& tanf);

/// value = a ^ b, where a and b are inputs or earlier values.
struct LinStep {
  LinCode value = 0;
  LinCode a = 0;
  LinCode b = 0;

  friend bool operator==(const LinStep&, const LinStep&) = default;
};

struct LinProgram {
  int n = 0;
  std::vector<LinStep> steps;

  std::size_t xor_count() const noexcept { return steps.size(); }
  /// Inputs plus every computed value.
  std::vector<LinCode> available() const;
};

struct LinLimits {
  std::size_t permutations = 64;
  std::uint64_t seed = 0;
  /// XOR budget for each permutation.
  std::optional<std::size_t> nb_xor_max;
  unsigned worker_count = 1;
  std::optional<std::chrono::milliseconds> time_budget;
  /// Per-call cap on candidate combinations visited by test_xor_lin.
  std::uint64_t work_cap = 2'000'000;
};

/// First combination of exactly j distinct available forms XORing to target,
/// in ascending index order; empty when none exists (or the work cap hit).
std::vector<LinCode> test_xor_lin(LinCode target, int j, const std::vector<LinCode>& available,
                                  std::uint64_t work_cap = 2'000'000);

/// Throws XorBoundInfeasible when every permutation exceeds nb_xor_max.
LinProgram solve_linear(const LinRequirements& reqs, const LinLimits& limits = {});

/// XORs in the assembled circuit: linear program, nonzero residuals and the
/// per-output chains (an all-zero output costs the one XOR of x0 ^ x0).
std::size_t total_xor_count(const NlSolution& solution, const LinProgram& program, const TruncatedAnf& tanf);

}  // namespace qsynth
