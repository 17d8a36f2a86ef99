#pragma once

// End-to-end driver used by the command-line tool: LUT sources, pattern bank
// management, synthesis runs, reports and table reproduction.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsynth/anf.hpp"
#include "qsynth/circuit.hpp"
#include "qsynth/nl_solver.hpp"
#include "qsynth/pattern_bank.hpp"

namespace qsynth {

/// Comma/whitespace separated values, decimal or 0x-prefixed; m = n.
Lut parse_lut_list(std::string_view text);
Lut load_lut_file(const std::filesystem::path& path);

struct NamedLut {
  std::string name;
  Lut lut;
};

/// chi:<n> | power:<n>:<e>[:<poly>] | powers:<n>:<e1>+<e2>+...[:<poly>] | ascon.
/// poly is a mask including the X^n term, decimal or 0x-prefixed.
NamedLut generate_lut(std::string_view spec);

struct RunConfig {
  std::optional<std::string> lut_inline;
  std::optional<std::filesystem::path> lut_file;
  std::optional<std::string> generator;
  std::string name;  // defaults from the source
  std::size_t solmax = 1;
  std::optional<int> andmax;
  double timemax_minutes = 10;
  bool precomputed_files = true;
  std::filesystem::path bank_dir = "banks";
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::optional<std::filesystem::path> out_dir;
};

/// Throws InvalidArgument unless exactly one source is set and timemax > 0.
NamedLut resolve_lut(const RunConfig& config);

/// Loads <dir>/bank_n<n>.qsbk when use_files and it exists; otherwise builds
/// in memory. Built n <= 7 banks are saved back when use_files is set. The
/// n >= 8 in-memory banks carry no MapXor.
PatternBank obtain_bank(int n, bool use_files, const std::filesystem::path& dir, std::ostream& log);

struct Implementation {
  NlSolution nl;
  LinProgram lin;
  StraightLineProgram slp;
  GateCounts counts;
  int depth = 0;
};

struct SynthReport {
  std::string name;
  int n = 0;
  int m = 0;
  std::optional<int> delta;
  std::optional<int> linearity;
  std::optional<bool> bijective;
  SearchStatus status = SearchStatus::BestFound;
  int lower_bound = 0;
  double seconds = 0;
  /// Verified implementations, fewest XORs first.
  std::vector<Implementation> implementations;
  std::vector<std::filesystem::path> written;

  const Implementation& best() const { return implementations.front(); }
};

SynthReport synthesize(const NamedLut& sbox, const RunConfig& config, const PatternBank& bank);
/// resolve_lut + obtain_bank + synthesize + artifact writing.
SynthReport cmd_synthesize(const RunConfig& config, std::ostream& log);

std::string status_name(SearchStatus status);
std::string report_table_header();
std::string report_table_row(const SynthReport& report);
std::string report_key_values(const SynthReport& report);

struct PrecomputeSummary {
  int n = 0;
  std::size_t set_op = 0;
  std::size_t map_keys = 0;
  std::uintmax_t file_bytes = 0;
  std::filesystem::path path;
};

/// Throws UnsupportedSize outside 3..9.
PrecomputeSummary cmd_precompute(int n, const std::filesystem::path& dir, std::ostream& log,
                                 const MapBuildOptions& options = {});

struct ReferenceRow {
  std::string name;
  std::string generator;
  int delta;
  int linearity;
  bool bijective;
  int and_count;
  int xor_count;
};

/// Generator-defined rows of the published result table for n.
std::vector<ReferenceRow> reference_rows(int n);

struct ReproduceRow {
  ReferenceRow reference;
  std::optional<SynthReport> report;
  std::string note;
};

/// Runs every reference row for n in 5..9 with the given per-S-box settings
/// and prints achieved versus published values.
std::vector<ReproduceRow> cmd_reproduce(int n, const RunConfig& base, std::ostream& out);

}  // namespace qsynth
