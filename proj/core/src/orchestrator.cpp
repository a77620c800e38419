#include "uavnoma/orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "uavnoma/errors.hpp"
#include "uavnoma/random.hpp"

namespace uavnoma {

namespace {

struct VariantName {
  Variant variant;
  std::string_view tag;
};

constexpr VariantName kVariantNames[] = {
    {Variant::kJuddsra1, "juddsra-1"},         {Variant::kJuddsra2, "juddsra-2"},
    {Variant::kOma, "oma"},                    {Variant::kFixedPower, "fixed-power"},
    {Variant::kStationaryUav, "stationary-uav"}, {Variant::kNoSwap, "no-swap"},
};

}  // namespace

std::string_view to_string(Variant v) {
  for (const auto& n : kVariantNames) {
    if (n.variant == v) return n.tag;
  }
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view tag) {
  for (const auto& n : kVariantNames) {
    if (n.tag == tag) return n.variant;
  }
  return std::nullopt;
}

const std::vector<Variant>& all_variants() {
  static const std::vector<Variant> variants = [] {
    std::vector<Variant> v;
    for (const auto& n : kVariantNames) v.push_back(n.variant);
    return v;
  }();
  return variants;
}

PowerAllocation allocate_powers(const Network& network, const Matching& matching,
                                PowerAllocation current, std::vector<UnitReport>* reports) {
  if (reports) reports->clear();
  for (int u = 0; u < matching.num_units(); ++u) {
    const UnitId unit = matching.unit_at(u);
    if (matching.occupancy(unit) == 0) continue;
    const Cluster cluster = network.cluster(matching, unit);
    const auto problem = FractionalProblem::from_cluster(cluster, network.config());
    const auto result = dabpa(problem);
    for (int i = 0; i < cluster.size(); ++i) current.set(cluster.members[i].device, result.powers[i]);
    if (reports) {
      UnitReport r;
      r.unit = unit;
      for (const auto& mem : cluster.members) r.devices.push_back(mem.device);
      r.rate = telescoped_rate(problem, result.powers);
      r.power_w = consumed_power(problem, result.powers);
      r.ee = result.ratio;
      r.tau = result.ratio;
      r.dinkelbach_iterations = result.iterations();
      reports->push_back(std::move(r));
    }
  }
  return current;
}

std::vector<UnitReport> unit_breakdown(const Network& network, const Matching& matching,
                                       const PowerAllocation& powers) {
  std::vector<UnitReport> out;
  const auto& cfg = network.config();
  for (int u = 0; u < matching.num_units(); ++u) {
    const UnitId unit = matching.unit_at(u);
    if (matching.occupancy(unit) == 0) continue;
    const Cluster cluster = network.cluster(matching, unit);
    UnitReport r;
    r.unit = unit;
    for (const auto& mem : cluster.members) r.devices.push_back(mem.device);
    r.rate = ss_unit_rate(cluster, powers, cfg.noise_power_w);
    r.power_w = ss_unit_power(cluster, powers, cfg.p_circuit_w);
    r.ee = r.rate / r.power_w;
    out.push_back(std::move(r));
  }
  return out;
}

Solution juddsra(const Network& network, const JuddsraOptions& options) {
  Solution s;
  s.devices = network.devices();
  s.deployment = network.deployment();
  s.matching = initialize_matching(network);
  s.powers = PowerAllocation(network.num_devices(), network.config().p_max_w);

  std::vector<UnitReport> dinkelbach_reports;
  if (!options.swap_matching) {
    // Initialization only, then a single power allocation.
    s.ee_trace.push_back(network_ee(network, s.matching, s.powers));
    if (options.allocate_power) {
      s.powers = allocate_powers(network, s.matching, s.powers, &dinkelbach_reports);
      s.ee_trace.push_back(network_ee(network, s.matching, s.powers));
    }
    s.outer_iterations = 1;
  } else {
    for (int it = 1;; ++it) {
      if (it > options.max_outer_iterations) {
        throw OuterIterationLimit("no fixed point after " +
                                  std::to_string(options.max_outer_iterations) +
                                  " outer iterations");
      }
      const Matching previous_matching = s.matching;
      if (options.use_exploration) {
        ExplorationOptions eo = options.exploration;
        eo.seed = combine_seeds({options.exploration.seed, static_cast<std::uint64_t>(it)});
        auto r = jdssa2(network, s.powers, eo, s.matching);
        s.matching = std::move(r.best);
        s.swap_count += r.swap_count;
      } else {
        auto r = jdssa1(network, s.powers, s.matching);
        s.matching = std::move(r.matching);
        s.swap_count += r.swap_count;
      }
      s.ee_trace.push_back(network_ee(network, s.matching, s.powers));

      bool powers_unchanged = true;
      if (options.allocate_power) {
        auto next = allocate_powers(network, s.matching, s.powers, &dinkelbach_reports);
        powers_unchanged = next.approx_equal(s.powers, options.power_tolerance_w);
        s.powers = std::move(next);
        s.ee_trace.push_back(network_ee(network, s.matching, s.powers));
      }
      s.outer_iterations = it;
      if (s.matching == previous_matching && powers_unchanged) break;
    }
  }

  s.ee = network_ee(network, s.matching, s.powers);
  s.accessed_count = s.matching.matched_count();
  s.units = unit_breakdown(network, s.matching, s.powers);
  if (options.allocate_power) {
    // Attach Dinkelbach diagnostics from the final power stage.
    for (auto& u : s.units) {
      for (const auto& d : dinkelbach_reports) {
        if (d.unit == u.unit) {
          u.tau = d.tau;
          u.dinkelbach_iterations = d.dinkelbach_iterations;
        }
      }
    }
  }
  return s;
}

Solution juddsra(const ScenarioConfig& config, const JuddsraOptions& options) {
  config.validate();
  Deployment deployment =
      options.stationary_uav ? stationary_deployment(config) : plan_stop_points(config);
  Network network(config, generate_devices(config), std::move(deployment));
  return juddsra(network, options);
}

Solution run_variant(const ScenarioConfig& config, Variant variant,
                     const VariantOptions& options) {
  config.validate();
  ScenarioConfig cfg = config;
  JuddsraOptions jo;
  jo.max_outer_iterations = options.max_outer_iterations;
  jo.exploration = options.exploration;
  switch (variant) {
    case Variant::kJuddsra1:
      break;
    case Variant::kJuddsra2:
      jo.use_exploration = true;
      break;
    case Variant::kOma:
      cfg.quota = 1;
      break;
    case Variant::kFixedPower:
      jo.allocate_power = false;
      break;
    case Variant::kStationaryUav:
      jo.stationary_uav = true;
      break;
    case Variant::kNoSwap:
      jo.swap_matching = false;
      break;
  }
  Deployment deployment =
      jo.stationary_uav ? stationary_deployment(cfg) : plan_stop_points(cfg, options.covering_table);
  Network network(cfg, generate_devices(cfg), std::move(deployment));
  return juddsra(network, jo);
}

RunRecord make_record(const Solution& s, const ScenarioConfig& config, Variant variant,
                      double sweep_value, int replicate) {
  RunRecord r;
  r.variant = variant;
  r.sweep_value = sweep_value;
  r.replicate = replicate;
  r.seed = config.rng_seed;
  r.num_devices = config.num_devices;
  r.num_subchannels = config.num_subchannels;
  r.num_stop_points = s.deployment.size();
  r.quota = s.matching.quota();
  r.p_max_w = config.p_max_w;
  r.ee = s.ee;
  r.accessed = s.accessed_count;
  r.swaps = s.swap_count;
  r.outer_iterations = s.outer_iterations;
  return r;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / s.count;
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.ci95 = 1.959963984540054 * std::sqrt(ss / (s.count - 1)) / std::sqrt(s.count);
  }
  return s;
}

std::vector<CdfPoint> empirical_cdf(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<CdfPoint> cdf;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    cdf.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  return cdf;
}

std::vector<GroupReport> collect_metrics(std::span<const RunRecord> records) {
  struct Bucket {
    Variant variant;
    double sweep_value;
    std::vector<double> ee, accessed, swaps;
  };
  std::vector<Bucket> buckets;
  for (const auto& r : records) {
    auto it = std::find_if(buckets.begin(), buckets.end(), [&](const Bucket& b) {
      return b.variant == r.variant && b.sweep_value == r.sweep_value;
    });
    if (it == buckets.end()) {
      buckets.push_back({r.variant, r.sweep_value, {}, {}, {}});
      it = std::prev(buckets.end());
    }
    it->ee.push_back(r.ee);
    it->accessed.push_back(r.accessed);
    it->swaps.push_back(r.swaps);
  }
  std::vector<GroupReport> out;
  for (const auto& b : buckets) {
    out.push_back({b.variant, b.sweep_value, summarize(b.ee), summarize(b.accessed),
                   summarize(b.swaps), empirical_cdf(b.swaps)});
  }
  return out;
}

}  // namespace uavnoma
