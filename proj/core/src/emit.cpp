#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>

#include "qsynth/circuit.hpp"
#include "qsynth/error.hpp"

namespace qsynth {

namespace {

// Inputs keep their x names; every other node is t<k> in creation order.
std::vector<std::string> node_names(const StraightLineProgram& slp) {
  std::vector<std::string> names;
  int next = 0;
  for (const auto& nd : slp.nodes()) {
    names.push_back(nd.kind == NodeKind::Input ? "x" + std::to_string(nd.a) : "t" + std::to_string(next++));
  }
  return names;
}

std::string header(const StraightLineProgram& slp) {
  const auto c = gate_counts(slp);
  return "n=" + std::to_string(slp.n()) + " m=" + std::to_string(slp.m()) + " and=" + std::to_string(c.and_count) +
         " xor=" + std::to_string(c.xor_count) + " depth=" + std::to_string(and_depth(slp));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, "gatelist line " + std::to_string(line) + ": " + what);
}

int header_field(std::string_view head, std::string_view key) {
  const std::string needle = std::string(key) + "=";
  const auto pos = head.find(needle);
  if (pos == std::string_view::npos) return -1;
  int value = -1;
  const char* begin = head.data() + pos + needle.size();
  std::from_chars(begin, head.data() + head.size(), value);
  return value;
}

}  // namespace

std::string emit_gatelist(const StraightLineProgram& slp) {
  const auto names = node_names(slp);
  std::ostringstream out;
  out << "# " << header(slp) << "\n";
  const auto& nodes = slp.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& nd = nodes[i];
    switch (nd.kind) {
      case NodeKind::Input:
        break;
      case NodeKind::Xor:
        out << names[i] << " = " << names[nd.a] << " ^ " << names[nd.b] << "\n";
        break;
      case NodeKind::And:
        out << names[i] << " = " << names[nd.a] << " & " << names[nd.b] << "\n";
        break;
      case NodeKind::Const1:
        out << names[i] << " = 1\n";
        break;
    }
  }
  for (int bit = 0; bit < slp.m(); ++bit) out << "y" << bit << " = " << names[slp.outputs()[bit]] << "\n";
  return out.str();
}

std::string emit_c_source(const StraightLineProgram& slp, const Lut& lut, std::string_view function_name) {
  const auto names = node_names(slp);
  std::ostringstream out;
  out << "/* " << header(slp) << " */\n";
  out << "#include <stdint.h>\n#include <stdio.h>\n\n";
  out << "void " << function_name << "(const uint64_t x[" << slp.n() << "], uint64_t y[" << slp.m() << "]) {\n";
  const auto& nodes = slp.nodes();
  const auto operand = [&](int k) {
    return nodes[k].kind == NodeKind::Input ? "x[" + std::to_string(nodes[k].a) + "]" : names[k];
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& nd = nodes[i];
    switch (nd.kind) {
      case NodeKind::Input:
        break;
      case NodeKind::Xor:
        out << "  const uint64_t " << names[i] << " = " << operand(nd.a) << " ^ " << operand(nd.b) << ";\n";
        break;
      case NodeKind::And:
        out << "  const uint64_t " << names[i] << " = " << operand(nd.a) << " & " << operand(nd.b) << ";\n";
        break;
      case NodeKind::Const1:
        out << "  const uint64_t " << names[i] << " = ~(uint64_t)0;\n";
        break;
    }
  }
  for (int bit = 0; bit < slp.m(); ++bit) out << "  y[" << bit << "] = " << operand(slp.outputs()[bit]) << ";\n";
  out << "}\n\n#ifndef SBOX_NO_MAIN\n";
  out << "static const uint32_t expected[" << lut.size() << "] = {";
  for (std::size_t v = 0; v < lut.size(); ++v) out << (v % 16 == 0 ? "\n  " : " ") << lut[v] << ",";
  out << "\n};\n\n";
  out << "int main(void) {\n"
      << "  const uint32_t size = " << lut.size() << "u;\n"
      << "  unsigned failures = 0;\n"
      << "  for (uint32_t base = 0; base < size; base += 64) {\n"
      << "    uint64_t x[" << slp.n() << "] = {0};\n"
      << "    uint64_t y[" << slp.m() << "];\n"
      << "    for (uint32_t lane = 0; lane < 64 && base + lane < size; ++lane)\n"
      << "      for (int i = 0; i < " << slp.n() << "; ++i) x[i] |= (uint64_t)(((base + lane) >> i) & 1u) << lane;\n"
      << "    " << function_name << "(x, y);\n"
      << "    for (uint32_t lane = 0; lane < 64 && base + lane < size; ++lane) {\n"
      << "      uint32_t v = 0;\n"
      << "      for (int j = 0; j < " << slp.m() << "; ++j) v |= (uint32_t)((y[j] >> lane) & 1u) << j;\n"
      << "      if (v != expected[base + lane]) ++failures;\n"
      << "    }\n"
      << "  }\n"
      << "  printf(\"%s: %u mismatches\\n\", failures ? \"FAIL\" : \"ok\", failures);\n"
      << "  return failures ? 1 : 0;\n"
      << "}\n#endif\n";
  return out.str();
}

std::string emit_source(const StraightLineProgram& slp, EmitFormat format, const Lut& lut) {
  return format == EmitFormat::Gatelist ? emit_gatelist(slp) : emit_c_source(slp, lut);
}

StraightLineProgram parse_gatelist(std::string_view text) {
  std::size_t line_no = 0;
  std::optional<StraightLineProgram> slp;
  std::unordered_map<std::string, int> nodes;
  const auto lookup = [&](std::string_view name, std::size_t line) {
    auto it = nodes.find(std::string(name));
    if (it == nodes.end()) malformed(line, "unknown operand '" + std::string(name) + "'");
    return it->second;
  };
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (!slp) {
        const int n = header_field(line, "n");
        const int m = header_field(line, "m");
        if (n < 1 || m < 1) malformed(line_no, "header must give n and m");
        slp.emplace(n, m);
        for (int i = 0; i < n; ++i) nodes["x" + std::to_string(i)] = i;
      }
      continue;
    }
    if (!slp) malformed(line_no, "assignment before the header");
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) malformed(line_no, "missing '='");
    const std::string target(trim(line.substr(0, eq)));
    const std::string_view rhs = trim(line.substr(eq + 1));
    int node = -1;
    const auto op = rhs.find_first_of("^&");
    if (op != std::string_view::npos) {
      const int a = lookup(trim(rhs.substr(0, op)), line_no);
      const int b = lookup(trim(rhs.substr(op + 1)), line_no);
      node = rhs[op] == '^' ? slp->add_xor(a, b) : slp->add_and(a, b);
    } else if (rhs == "1") {
      node = slp->add_const1();
    } else {
      node = lookup(rhs, line_no);
    }
    if (target.size() > 1 && target[0] == 'y') {
      int bit = -1;
      const auto [ptr, ec] = std::from_chars(target.data() + 1, target.data() + target.size(), bit);
      if (ec != std::errc() || ptr != target.data() + target.size() || bit < 0 || bit >= slp->m()) {
        malformed(line_no, "bad output name '" + target + "'");
      }
      slp->set_output(bit, node);
    }
    nodes[target] = node;
  }
  if (!slp) throw Error(ErrorCode::InvalidArgument, "gatelist has no header");
  for (int o : slp->outputs()) {
    if (o < 0) throw Error(ErrorCode::InvalidArgument, "gatelist leaves an output unassigned");
  }
  return *slp;
}

}  // namespace qsynth
