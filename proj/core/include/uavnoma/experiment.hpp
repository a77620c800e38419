#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uavnoma/orchestrator.hpp"

namespace uavnoma {

enum class SweepAxis { kNumDevices, kNumSubchannels, kQuota, kPMax, kTMax };

std::string_view to_string(SweepAxis axis);
std::optional<SweepAxis> parse_sweep_axis(std::string_view name);

// Everything needed to reproduce a sweep: the base scenario, one axis with
// its values, the variants to compare and the number of replicate seeds.
struct ExperimentSpec {
  ScenarioConfig base;
  SweepAxis axis = SweepAxis::kNumDevices;
  std::vector<double> values;
  std::vector<Variant> variants{Variant::kJuddsra1};
  int num_seeds = 1;
  std::string output_dir = "results";
  ExplorationOptions exploration;
  std::string covering_table_path;  // empty: built-in table
};

struct SpecParse {
  std::optional<ExperimentSpec> spec;
  std::vector<std::string> errors;  // "line N: key: message" or "key: message"

  bool ok() const { return spec.has_value(); }
};

// `key = value` lines, '#' comments. Powers accept _w, _mw and _dbm
// suffixes, the elevation angle _rad or _deg. Unknown or repeated keys and
// every out-of-range field are reported together; nothing is accepted
// unless the whole file is valid.
SpecParse parse_experiment_spec(std::istream& in);
SpecParse validate_config(const std::string& path);

// Base config with the swept parameter set to `value`.
ScenarioConfig apply_sweep(const ExperimentSpec& spec, double value,
                           ExplorationOptions* exploration = nullptr);

struct Cell {
  int index = 0;
  double sweep_value = 0.0;
  Variant variant = Variant::kJuddsra1;
  int replicate = 0;
  std::uint64_t layout_seed = 0;       // shared by every variant of a replicate
  std::uint64_t exploration_seed = 0;  // per variant
};

// Sweep value outermost, then replicate, then variant.
std::vector<Cell> plan_cells(const ExperimentSpec& spec);

struct RunSettings {
  int workers = 1;
  std::optional<std::uint64_t> seed_override;
  bool record_timing = false;
  bool unit_report = false;
};

struct CellOutcome {
  Cell cell;
  RunRecord record;
  std::vector<UnitReport> units;
  double wall_time_s = 0.0;
};

// Runs every cell. Throws the first cell failure (ConfigError,
// UncoverableArea, IterationLimit, OuterIterationLimit) after all workers
// stop.
std::vector<CellOutcome> execute_cells(const ExperimentSpec& spec, const RunSettings& settings);

// Writes results.csv, summary.csv, swap_cdf.csv and snapshot.csv (plus
// units.csv / timings.csv when requested) into spec.output_dir. Returns
// the process exit status; diagnostics go to `log`.
int run_experiment(const ExperimentSpec& spec, const RunSettings& settings, std::ostream& log);

// CSV writers; headers are fixed.
void write_results_csv(std::ostream& out, SweepAxis axis, const std::vector<CellOutcome>& cells);
void write_summary_csv(std::ostream& out, SweepAxis axis, const std::vector<GroupReport>& groups);
void write_swap_cdf_csv(std::ostream& out, SweepAxis axis, const std::vector<GroupReport>& groups);
void write_units_csv(std::ostream& out, const std::vector<CellOutcome>& cells);
void write_timings_csv(std::ostream& out, const std::vector<CellOutcome>& cells);
// Stop points then devices: kind,id,x_m,y_m,subchannel,stop_point
// (-1 for unmatched devices and for the stop point rows' subchannel).
void write_snapshot_csv(std::ostream& out, const Solution& solution);
// device,subchannel,stop_point for matched devices.
void write_matching_csv(std::ostream& out, const Matching& matching);

}  // namespace uavnoma
