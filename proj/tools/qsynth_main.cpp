#include <CLI11.hpp>

#include <iostream>

#include "qsynth/error.hpp"
#include "qsynth/pipeline.hpp"

namespace {

void add_run_options(CLI::App& cmd, qsynth::RunConfig& config, int& precomputed) {
  cmd.add_option("--solmax", config.solmax, "Number of solutions wanted")->check(CLI::PositiveNumber);
  cmd.add_option("--andmax", config.andmax, "Upper bound on AND gates")->check(CLI::NonNegativeNumber);
  cmd.add_option("--timemax", config.timemax_minutes, "Wall-clock budget in minutes")->check(CLI::PositiveNumber);
  cmd.add_option("--precomputed_files,--precomputation_files", precomputed, "0: build pattern banks in memory")
      ->check(CLI::Range(0, 1));
  cmd.add_option("--bank-dir", config.bank_dir, "Directory holding pattern bank files");
  cmd.add_option("--seed", config.seed, "RNG seed");
  cmd.add_option("--workers", config.workers, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-AND circuit synthesis for quadratic S-boxes"};
  app.require_subcommand(1);

  int precompute_n = 0;
  std::filesystem::path precompute_dir = "banks";
  auto* precompute = app.add_subcommand("precompute", "Build and save the pattern bank for n bits");
  precompute->add_option("n", precompute_n, "Number of bits (3..9)")->required();
  precompute->add_option("--bank-dir", precompute_dir, "Output directory");

  qsynth::RunConfig config;
  int precomputed = 1;
  bool key_values = false;
  auto* synth = app.add_subcommand("synth", "Synthesize an S-box");
  synth->add_option("--lut", config.lut_inline, "Little-endian value list, e.g. 0,1,4,5,...");
  synth->add_option("--lut-file", config.lut_file, "File with the value list")->check(CLI::ExistingFile);
  synth->add_option("--gen", config.generator, "chi:n | power:n:e[:poly] | powers:n:e1+e2[:poly] | ascon");
  synth->add_option("--name", config.name, "Name used in reports and artifact files");
  synth->add_option("--out", config.out_dir, "Directory for gatelist and C artifacts");
  synth->add_flag("--kv", key_values, "Also print key=value lines");
  add_run_options(*synth, config, precomputed);

  int table = 0;
  qsynth::RunConfig repro;
  int repro_precomputed = 1;
  repro.timemax_minutes = 1;
  auto* reproduce = app.add_subcommand("reproduce", "Re-run the generator-defined rows of a result table");
  reproduce->add_option("n", table, "Table by S-box width (5..9)")->required()->check(CLI::Range(5, 9));
  add_run_options(*reproduce, repro, repro_precomputed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*precompute) {
      qsynth::cmd_precompute(precompute_n, precompute_dir, std::cout);
      return 0;
    }
    if (*synth) {
      config.precomputed_files = precomputed != 0;
      const auto report = qsynth::cmd_synthesize(config, std::cerr);
      std::cout << qsynth::report_table_header() << "\n" << qsynth::report_table_row(report) << "\n";
      if (key_values) std::cout << qsynth::report_key_values(report);
      return report.implementations.empty() ? 1 : 0;
    }
    repro.precomputed_files = repro_precomputed != 0;
    const auto rows = qsynth::cmd_reproduce(table, repro, std::cout);
    const bool any = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.report.has_value(); });
    return any ? 0 : 1;
  } catch (const qsynth::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
