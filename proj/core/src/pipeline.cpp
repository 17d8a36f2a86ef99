#include "qsynth/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qsynth/error.hpp"
#include "qsynth/generators.hpp"
#include "qsynth/lin_solver.hpp"
#include "qsynth/properties.hpp"

namespace qsynth {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::uint64_t parse_number(std::string_view token, std::string_view what) {
  int base = 10;
  if (token.size() > 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X')) {
    base = 16;
    token.remove_prefix(2);
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value, base);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::InvalidArgument, "bad " + std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

int parse_width(std::string_view token) {
  const auto n = parse_number(token, "width");
  if (n < static_cast<std::uint64_t>(kMinBits) || n > static_cast<std::uint64_t>(kMaxBits)) {
    throw Error(ErrorCode::UnsupportedSize, "S-box width " + std::string(token) + " outside 3..9");
  }
  return static_cast<int>(n);
}

std::string hex(std::uint32_t v) {
  std::ostringstream s;
  s << "0x" << std::hex << v;
  return s.str();
}

std::string slug(std::string_view name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

Implementation build_implementation(const TruncatedAnf& tanf, const NlSolution& nl, const Lut& lut,
                                    const LinLimits& limits) {
  Implementation impl;
  impl.nl = nl;
  impl.lin = solve_linear(derive_linear_requirements(nl, tanf), limits);
  impl.slp = assemble(tanf, nl, impl.lin);
  if (!verify_against_lut(impl.slp, lut)) {
    throw Error(ErrorCode::InternalInconsistency, "assembled circuit disagrees with the LUT");
  }
  impl.counts = gate_counts(impl.slp);
  impl.depth = and_depth(impl.slp);
  return impl;
}

}  // namespace

Lut parse_lut_list(std::string_view text) {
  std::vector<std::uint32_t> values;
  std::string token;
  const auto flush = [&] {
    if (token.empty()) return;
    const auto v = parse_number(token, "LUT value");
    if (v > UINT32_MAX) throw Error(ErrorCode::InvalidArgument, "LUT value " + token + " too large");
    values.push_back(static_cast<std::uint32_t>(v));
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return Lut::from_values(std::move(values));
}

Lut load_lut_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_lut_list(text.str());
}

NamedLut generate_lut(std::string_view spec) {
  const auto parts = split(spec, ':');
  const std::string_view kind = parts[0];
  if (kind == "ascon" && parts.size() == 1) return {"ASCON", gen_ascon()};
  if (kind == "chi" && parts.size() == 2) {
    const int n = parse_width(parts[1]);
    return {"chi" + std::to_string(n), gen_chi(n)};
  }
  if ((kind == "power" || kind == "powers") && (parts.size() == 3 || parts.size() == 4)) {
    const int n = parse_width(parts[1]);
    const std::uint32_t poly = parts.size() == 4 ? static_cast<std::uint32_t>(parse_number(parts[3], "polynomial"))
                                                 : default_field_poly(n);
    std::vector<std::uint64_t> exps;
    std::string name;
    for (auto e : split(parts[2], '+')) {
      exps.push_back(parse_number(e, "exponent"));
      name += (name.empty() ? "X^" : "+X^") + std::string(e);
    }
    if (kind == "power" && exps.size() != 1) throw Error(ErrorCode::InvalidArgument, "power takes one exponent");
    if (parts.size() == 4) name += "/" + hex(poly);
    return {name + " (n=" + std::to_string(n) + ")", gen_power_sum(n, exps, poly)};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown generator '" + std::string(spec) + "'");
}

NamedLut resolve_lut(const RunConfig& config) {
  const int sources = (config.lut_inline ? 1 : 0) + (config.lut_file ? 1 : 0) + (config.generator ? 1 : 0);
  if (sources != 1) throw Error(ErrorCode::InvalidArgument, "give exactly one of --lut, --lut-file, --gen");
  if (!(config.timemax_minutes > 0)) throw Error(ErrorCode::InvalidArgument, "timemax must be positive");
  NamedLut out;
  if (config.lut_inline) {
    out = {"lut", parse_lut_list(*config.lut_inline)};
  } else if (config.lut_file) {
    out = {config.lut_file->stem().string(), load_lut_file(*config.lut_file)};
  } else {
    out = generate_lut(*config.generator);
  }
  if (!config.name.empty()) out.name = config.name;
  return out;
}

PatternBank obtain_bank(int n, bool use_files, const std::filesystem::path& dir, std::ostream& log) {
  const auto path = default_bank_path(dir, n);
  if (use_files && std::filesystem::exists(path)) {
    log << "loading pattern bank " << path.string() << "\n";
    return load_bank(n, path);
  }
  const bool with_map = n <= 7;
  PatternBank bank = make_bank(n, with_map);
  if (use_files && with_map) {
    std::filesystem::create_directories(dir);
    save_bank(bank.set_op, *bank.map_xor, path);
    log << "saved pattern bank " << path.string() << "\n";
  }
  return bank;
}

SynthReport synthesize(const NamedLut& sbox, const RunConfig& config, const PatternBank& bank) {
  const auto start = std::chrono::steady_clock::now();
  const Lut& lut = sbox.lut;
  if (lut.n() > kMaxBits) throw Error(ErrorCode::UnsupportedSize, "S-boxes above 9 bits are not supported");
  if (lut.m() > lut.n()) throw Error(ErrorCode::InvalidArgument, "more output bits than input bits");
  const TruncatedAnf tanf = truncate(lut);

  SynthReport report;
  report.name = sbox.name;
  report.n = lut.n();
  report.m = lut.m();
  if (lut.m() == lut.n()) {
    report.delta = differential_uniformity(lut);
    report.linearity = linearity(lut);
    report.bijective = is_bijective(lut);
  }

  const auto budget = std::chrono::duration<double, std::ratio<60>>(config.timemax_minutes);
  const auto total = std::chrono::duration_cast<std::chrono::milliseconds>(budget);
  SearchLimits limits;
  limits.nb_and_max = config.andmax;
  limits.solmax = std::max<std::size_t>(config.solmax, 1);
  limits.seed = config.seed;
  limits.worker_count = std::max(1u, config.workers);
  limits.time_budget = std::max(std::chrono::milliseconds(1), total * 4 / 5);
  const NlResult nl = solve_nonlinear(tanf, bank, limits);
  report.status = nl.status;
  report.lower_bound = nl.lower_bound;

  LinLimits lin_limits;
  lin_limits.seed = config.seed;
  lin_limits.worker_count = limits.worker_count;
  lin_limits.time_budget = std::max(std::chrono::milliseconds(1), total / 5 / static_cast<long>(nl.solutions.size()));
  for (const auto& s : nl.solutions) report.implementations.push_back(build_implementation(tanf, s, lut, lin_limits));
  std::stable_sort(report.implementations.begin(), report.implementations.end(),
                   [](const auto& a, const auto& b) { return a.counts.xor_count < b.counts.xor_count; });
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SynthReport cmd_synthesize(const RunConfig& config, std::ostream& log) {
  const NamedLut sbox = resolve_lut(config);
  if (sbox.lut.n() < kMinBits || sbox.lut.n() > kMaxBits) {
    throw Error(ErrorCode::UnsupportedSize, "S-box width must be 3..9, got " + std::to_string(sbox.lut.n()));
  }
  // Reject cubic inputs before paying for a bank.
  (void)truncate(sbox.lut);
  const PatternBank bank = obtain_bank(sbox.lut.n(), config.precomputed_files, config.bank_dir, log);
  SynthReport report = synthesize(sbox, config, bank);
  if (config.out_dir) {
    std::filesystem::create_directories(*config.out_dir);
    const std::string stem = slug(report.name);
    for (std::size_t k = 0; k < report.implementations.size(); ++k) {
      const auto& impl = report.implementations[k];
      const auto base = *config.out_dir / (stem + "_" + std::to_string(k + 1));
      const std::pair<std::filesystem::path, std::string> files[] = {
          {base.string() + ".gates", emit_gatelist(impl.slp)},
          {base.string() + ".c", emit_c_source(impl.slp, sbox.lut)},
      };
      for (const auto& [path, text] : files) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
        report.written.push_back(path);
      }
    }
  }
  return report;
}

std::string status_name(SearchStatus status) {
  switch (status) {
    case SearchStatus::Optimal: return "proved-optimal";
    case SearchStatus::BestFound: return "best-found";
    case SearchStatus::TimeBudgetExhausted: return "time-budget-exhausted";
  }
  return "unknown";
}

std::string report_table_header() {
  std::ostringstream s;
  s << std::left << std::setw(22) << "S-box" << std::right << std::setw(6) << "delta" << std::setw(6) << "L"
    << std::setw(5) << "Bij" << std::setw(6) << "AND" << std::setw(6) << "XOR" << std::setw(7) << "depth"
    << std::setw(10) << "time(s)" << "  status";
  return s.str();
}

std::string report_table_row(const SynthReport& r) {
  const auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("-"); };
  std::ostringstream s;
  s << std::left << std::setw(22) << r.name << std::right << std::setw(6) << opt(r.delta) << std::setw(6)
    << opt(r.linearity) << std::setw(5) << (r.bijective ? (*r.bijective ? "Yes" : "No") : "-") << std::setw(6)
    << r.best().counts.and_count << std::setw(6) << r.best().counts.xor_count << std::setw(7) << r.best().depth
    << std::setw(10) << std::fixed << std::setprecision(2) << r.seconds << "  " << status_name(r.status);
  return s.str();
}

std::string report_key_values(const SynthReport& r) {
  std::ostringstream s;
  s << "name=" << r.name << "\n"
    << "n=" << r.n << "\nm=" << r.m << "\n";
  if (r.delta) s << "delta=" << *r.delta << "\n";
  if (r.linearity) s << "linearity=" << *r.linearity << "\n";
  if (r.bijective) s << "bijective=" << (*r.bijective ? 1 : 0) << "\n";
  s << "and=" << r.best().counts.and_count << "\n"
    << "xor=" << r.best().counts.xor_count << "\n"
    << "depth=" << r.best().depth << "\n"
    << "lower_bound=" << r.lower_bound << "\n"
    << "solutions=" << r.implementations.size() << "\n"
    << "status=" << status_name(r.status) << "\n"
    << "seconds=" << std::fixed << std::setprecision(3) << r.seconds << "\n";
  for (const auto& p : r.written) s << "artifact=" << p.string() << "\n";
  return s.str();
}

PrecomputeSummary cmd_precompute(int n, const std::filesystem::path& dir, std::ostream& log,
                                 const MapBuildOptions& options) {
  if (n < kMinBits || n > kMaxBits) {
    throw Error(ErrorCode::UnsupportedSize, "pattern banks exist for 3 <= n <= 9, got " + std::to_string(n));
  }
  PrecomputeSummary summary;
  summary.n = n;
  const PatternBank bank = make_bank(n, true, options);
  summary.set_op = bank.set_op.size();
  summary.map_keys = bank.map_xor->key_count();
  std::filesystem::create_directories(dir);
  summary.path = default_bank_path(dir, n);
  save_bank(bank.set_op, *bank.map_xor, summary.path);
  summary.file_bytes = std::filesystem::file_size(summary.path);
  log << "n=" << n << " set_op=" << summary.set_op << " map_keys=" << summary.map_keys
      << " file=" << summary.path.string() << " bytes=" << summary.file_bytes << "\n";
  return summary;
}

std::vector<ReferenceRow> reference_rows(int n) {
  switch (n) {
    case 5:
      return {{"chi5", "chi:5", 8, 16, true, 5, 10},
              {"ASCON", "ascon", 8, 16, true, 5, 15},
              {"X^3", "power:5:3", 2, 8, true, 7, 19},
              {"X^5", "power:5:5", 2, 8, true, 7, 21}};
    case 6:
      return {{"chi6", "chi:6", 16, 32, false, 6, 12},
              {"X^3", "power:6:3", 2, 16, false, 8, 37},
              {"X^9", "power:6:9", 8, 64, false, 6, 28}};
    case 7:
      return {{"chi7", "chi:7", 32, 64, true, 7, 14},      {"X^3", "power:7:3", 2, 16, true, 11, 45},
              {"X^5", "power:7:5", 2, 16, true, 11, 56},    {"X^9", "power:7:9", 2, 16, true, 11, 53},
              {"X^17", "power:7:17", 2, 16, true, 11, 54},  {"X^33", "power:7:33", 2, 16, true, 11, 58},
              {"X^65", "power:7:65", 2, 16, true, 11, 52},  {"X^3+X^5", "powers:7:3+5", 4, 32, false, 10, 57}};
    case 8:
      return {{"chi8", "chi:8", 64, 128, false, 8, 16},     {"X^3", "power:8:3", 2, 32, false, 14, 77},
              {"X^5", "power:8:5", 4, 64, false, 12, 71},    {"X^9", "power:8:9", 2, 32, false, 14, 75},
              {"X^17", "power:8:17", 16, 256, false, 10, 48}, {"X^33", "power:8:33", 2, 32, false, 14, 76},
              {"X^65", "power:8:65", 4, 64, false, 12, 68},  {"X^129", "power:8:129", 2, 32, false, 14, 81}};
    case 9:
      return {{"chi9", "chi:9", 128, 256, true, 9, 18},
              {"X^3", "power:9:3", 2, 32, true, 19, 94},
              {"X^5", "power:9:5", 2, 32, true, 20, 109},
              {"X^9", "power:9:9", 8, 64, true, 18, 100},
              {"X^65", "power:9:65", 8, 64, true, 18, 97},
              {"X^3+X^5", "powers:9:3+5", 4, 64, false, 18, 100},
              {"X^3+X^9", "powers:9:3+9", 8, 64, false, 18, 93},
              {"X^3+X^5+X^17", "powers:9:3+5+17", 8, 256, false, 18, 96}};
    default:
      throw Error(ErrorCode::InvalidArgument, "reproducible tables cover n = 5..9, got " + std::to_string(n));
  }
}

std::vector<ReproduceRow> cmd_reproduce(int n, const RunConfig& base, std::ostream& out) {
  const auto refs = reference_rows(n);
  const PatternBank bank = obtain_bank(n, base.precomputed_files, base.bank_dir, out);
  out << std::left << std::setw(14) << "S-box" << std::right << std::setw(12) << "published" << std::setw(12)
      << "achieved" << std::setw(10) << "time(s)" << "  status\n";
  std::vector<ReproduceRow> rows;
  for (const auto& ref : refs) {
    ReproduceRow row{ref, std::nullopt, ""};
    RunConfig config = base;
    config.lut_inline.reset();
    config.lut_file.reset();
    config.generator = ref.generator;
    config.name = ref.name;
    std::string achieved = "-";
    std::string time = "-";
    std::string status;
    try {
      row.report = synthesize(resolve_lut(config), config, bank);
      const auto& c = row.report->best().counts;
      achieved = std::to_string(c.and_count) + " - " + std::to_string(c.xor_count);
      std::ostringstream t;
      t << std::fixed << std::setprecision(2) << row.report->seconds;
      time = t.str();
      status = status_name(row.report->status);
    } catch (const Error& e) {
      row.note = e.what();
      status = row.note;
    }
    out << std::left << std::setw(14) << ref.name << std::right << std::setw(12)
        << (std::to_string(ref.and_count) + " - " + std::to_string(ref.xor_count)) << std::setw(12) << achieved
        << std::setw(10) << time << "  " << status << "\n";
    rows.push_back(std::move(row));
  }
  out << "S-boxes given only as supplementary LUTs are not included.\n";
  return rows;
}

}  // namespace qsynth
