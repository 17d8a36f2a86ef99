#pragma once

// Straight-line programs over AND/XOR gates: assembly from the two solver
// phases, evaluation, verification and text renderings.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsynth/anf.hpp"
#include "qsynth/lin_solver.hpp"
#include "qsynth/nl_solver.hpp"

namespace qsynth {

enum class NodeKind { Input, Xor, And, Const1 };

struct Node {
  NodeKind kind = NodeKind::Input;
  int a = -1;  // variable index for Input, operand otherwise
  int b = -1;

  friend bool operator==(const Node&, const Node&) = default;
};

struct GateCounts {
  std::size_t and_count = 0;
  std::size_t xor_count = 0;

  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

/// Nodes are topologically ordered; the first n are the inputs x0..x{n-1}.
class StraightLineProgram {
 public:
  StraightLineProgram() = default;
  StraightLineProgram(int n, int m);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<int>& outputs() const noexcept { return outputs_; }

  int add_xor(int a, int b);
  int add_and(int a, int b);
  int add_const1();
  void set_output(int bit, int node);

  friend bool operator==(const StraightLineProgram&, const StraightLineProgram&) = default;

 private:
  int add(Node node);

  int n_ = 0;
  int m_ = 0;
  std::vector<Node> nodes_;
  std::vector<int> outputs_;
};

/// Throws InternalInconsistency when a needed linear form was never computed.
StraightLineProgram assemble(const TruncatedAnf& tanf, const NlSolution& solution, const LinProgram& program);

std::uint32_t evaluate(const StraightLineProgram& slp, std::uint32_t x);
bool verify_against_lut(const StraightLineProgram& slp, const Lut& lut);

GateCounts gate_counts(const StraightLineProgram& slp);
/// Largest number of AND gates on any input-to-output path.
int and_depth(const StraightLineProgram& slp);

enum class EmitFormat { Gatelist, CSource };

std::string emit_gatelist(const StraightLineProgram& slp);
/// Bitsliced C99 function `void <name>(const uint64_t x[n], uint64_t y[m])`
/// plus a main() checking lut, omitted when compiled with -DSBOX_NO_MAIN.
std::string emit_c_source(const StraightLineProgram& slp, const Lut& lut, std::string_view function_name = "sbox");
std::string emit_source(const StraightLineProgram& slp, EmitFormat format, const Lut& lut);

/// Parses emit_gatelist output; throws InvalidArgument on malformed text.
StraightLineProgram parse_gatelist(std::string_view text);

}  // namespace qsynth
