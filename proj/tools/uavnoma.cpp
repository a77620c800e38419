// uavnoma: run UAV/NOMA energy-efficiency experiments from a spec file.
//
//   uavnoma run <spec-file> [--out DIR] [--workers N] [--seed S] [--timing] [--unit-report]
//   uavnoma validate <spec-file>
//   uavnoma snapshot <config-file> [--out DIR] [--seed S] [--variant TAG]

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "uavnoma/errors.hpp"
#include "uavnoma/experiment.hpp"

namespace {

using uavnoma::SpecParse;

bool report_errors(const std::string& path, const SpecParse& parsed) {
  if (parsed.ok()) return false;
  std::cerr << path << ": invalid specification\n";
  for (const auto& e : parsed.errors) std::cerr << "  " << e << '\n';
  return true;
}

int snapshot(const std::string& path, const std::string& out_dir,
             const std::optional<std::uint64_t>& seed, const std::string& variant_tag) {
  const auto parsed = uavnoma::validate_config(path);
  if (report_errors(path, parsed)) return 2;
  const auto variant = uavnoma::parse_variant(variant_tag);
  if (!variant) {
    std::cerr << "unknown variant '" << variant_tag << "'\n";
    return 2;
  }
  uavnoma::ScenarioConfig cfg = parsed.spec->base;
  if (seed) cfg.rng_seed = *seed;
  uavnoma::VariantOptions options;
  options.exploration = parsed.spec->exploration;
  if (!parsed.spec->covering_table_path.empty()) {
    options.covering_table = uavnoma::CoveringTable::load(parsed.spec->covering_table_path);
  }
  const auto solution = uavnoma::run_variant(cfg, *variant, options);

  std::filesystem::create_directories(out_dir);
  const auto file = std::filesystem::path(out_dir) / "snapshot.csv";
  std::ofstream out(file, std::ios::binary);
  uavnoma::write_snapshot_csv(out, solution);
  if (!out) {
    std::cerr << "failed writing " << file.string() << '\n';
    return 1;
  }
  std::cout << "K=" << solution.deployment.size() << " accessed=" << solution.accessed_count
            << '/' << cfg.num_devices << " ee=" << solution.ee << " -> " << file.string()
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV-aided NOMA IoT energy-efficiency experiments"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_dir;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::optional<std::uint64_t> seed;
  bool timing = false;
  bool unit_report = false;
  std::string variant_tag = "juddsra-1";

  auto* run = app.add_subcommand("run", "Run every sweep cell and write CSV tables");
  run->add_option("spec", spec_path, "Experiment spec file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--out", out_dir, "Output directory (overrides output_dir)");
  run->add_option("-j,--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Base seed override");
  run->add_flag("--timing", timing, "Also write timings.csv with per-run wall time");
  run->add_flag("--unit-report", unit_report, "Also write units.csv with per-unit breakdowns");

  auto* validate = app.add_subcommand("validate", "Check a spec file and report every problem");
  validate->add_option("spec", spec_path, "Experiment spec file")->required();

  auto* snap = app.add_subcommand("snapshot", "Solve one scenario and write snapshot.csv");
  snap->add_option("config", spec_path, "Scenario config file")->required()->check(CLI::ExistingFile);
  snap->add_option("-o,--out", out_dir, "Output directory")->default_val(".");
  snap->add_option("--seed", seed, "Layout seed override");
  snap->add_option("--variant", variant_tag, "Variant tag")->default_val("juddsra-1");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      const auto parsed = uavnoma::validate_config(spec_path);
      if (report_errors(spec_path, parsed)) return 2;
      const auto cells = uavnoma::plan_cells(*parsed.spec);
      std::cout << spec_path << ": ok (" << cells.size() << " runs)\n";
      return 0;
    }
    if (*snap) return snapshot(spec_path, out_dir, seed, variant_tag);

    const auto parsed = uavnoma::validate_config(spec_path);
    if (report_errors(spec_path, parsed)) return 2;
    uavnoma::ExperimentSpec spec = *parsed.spec;
    if (!out_dir.empty()) spec.output_dir = out_dir;
    uavnoma::RunSettings settings;
    settings.workers = workers;
    settings.seed_override = seed;
    settings.record_timing = timing;
    settings.unit_report = unit_report;
    return uavnoma::run_experiment(spec, settings, std::cerr);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
