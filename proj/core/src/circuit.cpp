#include "qsynth/circuit.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>

#include "qsynth/error.hpp"

namespace qsynth {

StraightLineProgram::StraightLineProgram(int n, int m) : n_(n), m_(m), outputs_(static_cast<std::size_t>(m), -1) {
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "a program needs at least one input and output");
  for (int i = 0; i < n; ++i) nodes_.push_back({NodeKind::Input, i, -1});
}

int StraightLineProgram::add(Node node) {
  const int size = static_cast<int>(nodes_.size());
  const bool binary = node.kind == NodeKind::Xor || node.kind == NodeKind::And;
  if (binary && (node.a < 0 || node.b < 0 || node.a >= size || node.b >= size)) {
    throw Error(ErrorCode::InvalidArgument, "gate operand does not precede the gate");
  }
  nodes_.push_back(node);
  return size;
}

int StraightLineProgram::add_xor(int a, int b) { return add({NodeKind::Xor, a, b}); }
int StraightLineProgram::add_and(int a, int b) { return add({NodeKind::And, a, b}); }
int StraightLineProgram::add_const1() { return add({NodeKind::Const1, -1, -1}); }

void StraightLineProgram::set_output(int bit, int node) {
  if (bit < 0 || bit >= m_ || node < 0 || node >= static_cast<int>(nodes_.size())) {
    throw Error(ErrorCode::InvalidArgument, "output index or node out of range");
  }
  outputs_[bit] = node;
}

StraightLineProgram assemble(const TruncatedAnf& tanf, const NlSolution& solution, const LinProgram& program) {
  const int n = tanf.n;
  if (program.n != n) throw Error(ErrorCode::InvalidArgument, "linear program size differs from the S-box");
  if (solution.combos.size() != tanf.rows.size()) {
    throw Error(ErrorCode::InvalidArgument, "solution row count differs from the S-box");
  }
  StraightLineProgram slp(n, tanf.m);
  std::unordered_map<LinCode, int> lin_node;
  for (int i = 0; i < n; ++i) lin_node[lin_var(n, i)] = i;
  const auto node_of = [&](LinCode l) {
    auto it = lin_node.find(l);
    if (it == lin_node.end()) {
      throw Error(ErrorCode::InternalInconsistency, "linear form " + lin_to_string(n, l) + " was never scheduled");
    }
    return it->second;
  };
  for (const auto& s : program.steps) {
    if ((s.a ^ s.b) != s.value) throw Error(ErrorCode::InternalInconsistency, "linear step does not add up");
    lin_node.emplace(s.value, slp.add_xor(node_of(s.a), node_of(s.b)));
  }

  std::vector<int> op_node;
  for (const auto& op : solution.ops) {
    int node = slp.add_and(node_of(op.l1), node_of(op.l2));
    if (op.residual != 0) node = slp.add_xor(node, node_of(op.residual));
    op_node.push_back(node);
  }

  int one = -1;
  for (int bit = 0; bit < tanf.m; ++bit) {
    const auto& row = tanf.rows[bit];
    std::vector<int> terms;
    for (std::uint64_t c = solution.combos[bit]; c != 0; c &= c - 1) terms.push_back(op_node[std::countr_zero(c)]);
    if (row.lin != 0) terms.push_back(node_of(row.lin));
    if (row.constant) {
      if (one < 0) one = slp.add_const1();
      terms.push_back(one);
    }
    if (terms.empty()) {
      slp.set_output(bit, slp.add_xor(0, 0));
      continue;
    }
    int acc = terms.front();
    for (std::size_t t = 1; t < terms.size(); ++t) acc = slp.add_xor(acc, terms[t]);
    slp.set_output(bit, acc);
  }
  return slp;
}

std::uint32_t evaluate(const StraightLineProgram& slp, std::uint32_t x) {
  const auto& nodes = slp.nodes();
  std::vector<std::uint8_t> value(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& nd = nodes[i];
    switch (nd.kind) {
      case NodeKind::Input:
        value[i] = (x >> nd.a) & 1u;
        break;
      case NodeKind::Xor:
        value[i] = value[nd.a] ^ value[nd.b];
        break;
      case NodeKind::And:
        value[i] = value[nd.a] & value[nd.b];
        break;
      case NodeKind::Const1:
        value[i] = 1;
        break;
    }
  }
  std::uint32_t y = 0;
  for (int bit = 0; bit < slp.m(); ++bit) y |= static_cast<std::uint32_t>(value[slp.outputs()[bit]]) << bit;
  return y;
}

bool verify_against_lut(const StraightLineProgram& slp, const Lut& lut) {
  if (slp.n() != lut.n() || slp.m() != lut.m()) return false;
  if (std::any_of(slp.outputs().begin(), slp.outputs().end(), [](int o) { return o < 0; })) return false;
  for (std::size_t x = 0; x < lut.size(); ++x) {
    if (evaluate(slp, static_cast<std::uint32_t>(x)) != lut[x]) return false;
  }
  return true;
}

GateCounts gate_counts(const StraightLineProgram& slp) {
  GateCounts c;
  for (const auto& nd : slp.nodes()) {
    if (nd.kind == NodeKind::And) ++c.and_count;
    if (nd.kind == NodeKind::Xor) ++c.xor_count;
  }
  return c;
}

int and_depth(const StraightLineProgram& slp) {
  const auto& nodes = slp.nodes();
  std::vector<int> depth(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& nd = nodes[i];
    if (nd.kind == NodeKind::Xor || nd.kind == NodeKind::And) {
      depth[i] = std::max(depth[nd.a], depth[nd.b]) + (nd.kind == NodeKind::And ? 1 : 0);
    }
  }
  int out = 0;
  for (int o : slp.outputs()) {
    if (o >= 0) out = std::max(out, depth[o]);
  }
  return out;
}

}  // namespace qsynth
