#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uavnoma/channel.hpp"
#include "uavnoma/matching.hpp"
#include "uavnoma/power.hpp"
#include "uavnoma/scenario.hpp"

namespace uavnoma {

enum class Variant {
  kJuddsra1,       // swap matching, Dinkelbach power control
  kJuddsra2,       // same with exploration swaps
  kOma,            // quota forced to 1
  kFixedPower,     // every device at P_max, no power control
  kStationaryUav,  // one stop point above the centre
  kNoSwap,         // initialization only, then one power allocation
};

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view tag);
const std::vector<Variant>& all_variants();

struct UnitReport {
  UnitId unit;
  std::vector<int> devices;  // decoding order
  double rate = 0.0;
  double power_w = 0.0;
  double ee = 0.0;
  double tau = 0.0;           // Dinkelbach ratio; 0 when power was not optimized
  int dinkelbach_iterations = 0;
};

struct Solution {
  std::vector<Device> devices;
  Deployment deployment;
  Matching matching;
  PowerAllocation powers;
  double ee = 0.0;
  int accessed_count = 0;
  int swap_count = 0;
  int outer_iterations = 0;
  // EE after every matching stage and every power stage, in order.
  std::vector<double> ee_trace;
  std::vector<UnitReport> units;
};

struct JuddsraOptions {
  bool swap_matching = true;
  bool allocate_power = true;
  bool stationary_uav = false;
  bool use_exploration = false;
  ExplorationOptions exploration;
  int max_outer_iterations = 50;
  double power_tolerance_w = 1e-9;
  DinkelbachOptions dinkelbach;
};

// Runs Dinkelbach on every occupied unit. Unmatched devices keep their
// current power. Optionally reports per-unit Dinkelbach outcomes.
PowerAllocation allocate_powers(const Network& network, const Matching& matching,
                                PowerAllocation current,
                                std::vector<UnitReport>* reports = nullptr);

// Deployment, then alternating swap matching and power allocation until the
// matching and every power are unchanged over one outer iteration. The
// matching stage warm-starts from the previous outer iteration. Throws
// OuterIterationLimit when no fixed point is reached.
Solution juddsra(const Network& network, const JuddsraOptions& options = {});
Solution juddsra(const ScenarioConfig& config, const JuddsraOptions& options = {});

struct VariantOptions {
  ExplorationOptions exploration;
  int max_outer_iterations = 50;
  CoveringTable covering_table = CoveringTable::builtin();
};

Solution run_variant(const ScenarioConfig& config, Variant variant,
                     const VariantOptions& options = {});

// Per-unit rate, power and EE for a given state (no optimization).
std::vector<UnitReport> unit_breakdown(const Network& network, const Matching& matching,
                                       const PowerAllocation& powers);

struct RunRecord {
  Variant variant = Variant::kJuddsra1;
  double sweep_value = 0.0;
  int replicate = 0;
  std::uint64_t seed = 0;
  int num_devices = 0;
  int num_subchannels = 0;
  int num_stop_points = 0;
  int quota = 0;
  double p_max_w = 0.0;
  double ee = 0.0;
  int accessed = 0;
  int swaps = 0;
  int outer_iterations = 0;
};

RunRecord make_record(const Solution& s, const ScenarioConfig& config, Variant variant,
                      double sweep_value, int replicate);

struct Summary {
  int count = 0;
  double mean = 0.0;
  double ci95 = 0.0;  // normal-approximation half width; 0 for one sample
};

Summary summarize(std::span<const double> values);

struct CdfPoint {
  double value = 0.0;
  double cumulative = 0.0;
};

// Empirical CDF at each distinct value.
std::vector<CdfPoint> empirical_cdf(std::span<const double> values);

struct GroupReport {
  Variant variant = Variant::kJuddsra1;
  double sweep_value = 0.0;
  Summary ee;
  Summary accessed;
  Summary swaps;
  std::vector<CdfPoint> swap_cdf;
};

// Groups by (variant, sweep value), in order of first appearance.
std::vector<GroupReport> collect_metrics(std::span<const RunRecord> records);

}  // namespace uavnoma
