#include "uavnoma/experiment.hpp"

#include <atomic>
#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "uavnoma/errors.hpp"
#include "uavnoma/random.hpp"

namespace uavnoma {

namespace {

constexpr std::pair<SweepAxis, std::string_view> kAxisNames[] = {
    {SweepAxis::kNumDevices, "num_devices"}, {SweepAxis::kNumSubchannels, "num_subchannels"},
    {SweepAxis::kQuota, "quota"},            {SweepAxis::kPMax, "p_max"},
    {SweepAxis::kTMax, "t_max"},
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long long> to_integer(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

// Power keys come with a unit suffix; returns the value in watts.
std::optional<double> power_in_watts(const std::string& suffix, double v) {
  if (suffix == "w") return v;
  if (suffix == "mw") return v * 1e-3;
  if (suffix == "dbm") return dbm_to_watts(v);
  return std::nullopt;
}

struct Entry {
  std::string value;
  int line = 0;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
  for (const auto& [a, name] : kAxisNames) {
    if (a == axis) return name;
  }
  return "unknown";
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view name) {
  for (const auto& [a, n] : kAxisNames) {
    if (n == name) return a;
  }
  return std::nullopt;
}

SpecParse parse_experiment_spec(std::istream& in) {
  SpecParse result;
  auto& errors = result.errors;
  // canonical key -> raw entry; canonical names fold unit suffixes.
  std::map<std::string, std::pair<std::string, Entry>> entries;

  const std::vector<std::string> power_keys = {"noise_power", "p_max", "p_min", "p_circuit"};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    std::string canonical = key;
    for (const auto& pk : power_keys) {
      if (key.rfind(pk + "_", 0) == 0) canonical = pk;
    }
    if (key == "min_elevation_rad" || key == "min_elevation_deg") canonical = "min_elevation";
    if (key == "rng_seed") canonical = "seed";
    if (entries.contains(canonical)) {
      errors.push_back("line " + std::to_string(line_no) + ": " + key +
                       ": specified more than once");
      continue;
    }
    entries[canonical] = {key, {value, line_no}};
  }

  ExperimentSpec spec;
  auto& cfg = spec.base;
  auto where = [](const std::string& key, const Entry& e) {
    return "line " + std::to_string(e.line) + ": " + key + ": ";
  };
  std::vector<std::pair<std::string, std::pair<std::string, Entry>>> in_order(entries.begin(),
                                                                             entries.end());
  std::sort(in_order.begin(), in_order.end(),
            [](const auto& a, const auto& b) { return a.second.second.line < b.second.second.line; });
  for (const auto& [canonical, kv] : in_order) {
    const auto& [key, e] = kv;
    const std::string at = where(key, e);
    auto number = [&]() -> std::optional<double> {
      auto v = to_double(e.value);
      if (!v) errors.push_back(at + "not a number: '" + e.value + "'");
      return v;
    };
    auto integer = [&]() -> std::optional<long long> {
      auto v = to_integer(e.value);
      if (!v) errors.push_back(at + "not an integer: '" + e.value + "'");
      return v;
    };

    if (canonical == "area_radius_m") {
      if (auto v = number()) cfg.area_radius_m = *v;
    } else if (canonical == "uav_altitude_m") {
      if (auto v = number()) cfg.uav_altitude_m = *v;
    } else if (canonical == "min_elevation") {
      if (auto v = number()) {
        cfg.min_elevation_rad = key == "min_elevation_deg" ? *v * std::numbers::pi / 180.0 : *v;
      }
    } else if (canonical == "num_devices") {
      if (auto v = integer()) cfg.num_devices = static_cast<int>(*v);
    } else if (canonical == "num_subchannels") {
      if (auto v = integer()) cfg.num_subchannels = static_cast<int>(*v);
    } else if (canonical == "quota") {
      if (auto v = integer()) cfg.quota = static_cast<int>(*v);
    } else if (canonical == "unit_gain") {
      if (auto v = number()) cfg.unit_gain = *v;
    } else if (canonical == "noise_power" || canonical == "p_max" || canonical == "p_min" ||
               canonical == "p_circuit") {
      const std::string suffix =
          key.size() > canonical.size() ? key.substr(canonical.size() + 1) : std::string();
      auto v = number();
      if (!v) continue;
      auto watts = power_in_watts(suffix, *v);
      if (!watts) {
        errors.push_back(at + "unknown unit suffix (use _w, _mw or _dbm)");
        continue;
      }
      if (canonical == "noise_power") cfg.noise_power_w = *watts;
      if (canonical == "p_max") cfg.p_max_w = *watts;
      if (canonical == "p_min") cfg.p_min_w = *watts;
      if (canonical == "p_circuit") cfg.p_circuit_w = *watts;
    } else if (canonical == "seed") {
      if (auto v = integer()) {
        if (*v < 0) {
          errors.push_back(at + "must be non-negative");
        } else {
          cfg.rng_seed = static_cast<std::uint64_t>(*v);
        }
      }
    } else if (canonical == "sweep_axis") {
      if (auto a = parse_sweep_axis(e.value)) {
        spec.axis = *a;
      } else {
        errors.push_back(at + "unknown axis '" + e.value +
                         "' (num_devices, num_subchannels, quota, p_max, t_max)");
      }
    } else if (canonical == "sweep_values") {
      for (const auto& item : split_list(e.value)) {
        if (auto v = to_double(item)) {
          spec.values.push_back(*v);
        } else {
          errors.push_back(at + "not a number: '" + item + "'");
        }
      }
      if (spec.values.empty()) errors.push_back(at + "value list must not be empty");
    } else if (canonical == "variants") {
      spec.variants.clear();
      for (const auto& item : split_list(e.value)) {
        if (auto v = parse_variant(item)) {
          spec.variants.push_back(*v);
        } else {
          errors.push_back(at + "unknown variant '" + item + "'");
        }
      }
      if (spec.variants.empty()) errors.push_back(at + "variant list must not be empty");
    } else if (canonical == "num_seeds") {
      if (auto v = integer()) {
        if (*v < 1) errors.push_back(at + "must be at least 1");
        spec.num_seeds = static_cast<int>(*v);
      }
    } else if (canonical == "output_dir") {
      if (e.value.empty()) errors.push_back(at + "must not be empty");
      spec.output_dir = e.value;
    } else if (canonical == "t_max") {
      if (auto v = integer()) {
        if (*v < 1) errors.push_back(at + "must be at least 1");
        spec.exploration.t_max = static_cast<int>(*v);
      }
    } else if (canonical == "epsilon") {
      if (auto v = number()) {
        if (!(*v >= 0.0 && *v < 1.0)) errors.push_back(at + "must lie in [0, 1)");
        spec.exploration.epsilon = *v;
      }
    } else if (canonical == "covering_table") {
      spec.covering_table_path = e.value;
    } else {
      errors.push_back(at + "unknown key");
    }
  }

  if (spec.values.empty() && !entries.contains("sweep_values")) {
    // No sweep: a single cell at the base value of the axis.
    switch (spec.axis) {
      case SweepAxis::kNumDevices: spec.values = {double(cfg.num_devices)}; break;
      case SweepAxis::kNumSubchannels: spec.values = {double(cfg.num_subchannels)}; break;
      case SweepAxis::kQuota: spec.values = {double(cfg.quota)}; break;
      case SweepAxis::kPMax: spec.values = {cfg.p_max_w}; break;
      case SweepAxis::kTMax: spec.values = {double(spec.exploration.t_max)}; break;
    }
  }

  const auto base_problems = cfg.problems();
  for (const auto& p : base_problems) errors.push_back(p);
  const bool integral_axis = spec.axis != SweepAxis::kPMax;
  for (double v : spec.values) {
    if (integral_axis && v != std::floor(v)) {
      errors.push_back("sweep_values: " + std::string(to_string(spec.axis)) +
                       " values must be integers, got " + fmt(v));
      continue;
    }
    ExplorationOptions eo = spec.exploration;
    for (const auto& p : apply_sweep(spec, v, &eo).problems()) {
      if (std::find(base_problems.begin(), base_problems.end(), p) != base_problems.end()) continue;
      errors.push_back("sweep_values=" + fmt(v) + ": " + p);
    }
    if (eo.t_max < 1) errors.push_back("sweep_values=" + fmt(v) + ": t_max must be at least 1");
  }

  if (errors.empty()) result.spec = std::move(spec);
  return result;
}

SpecParse validate_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    SpecParse r;
    r.errors.push_back(path + ": cannot open file");
    return r;
  }
  auto r = parse_experiment_spec(in);
  if (r.ok() && !r.spec->covering_table_path.empty()) {
    auto table_path = std::filesystem::path(r.spec->covering_table_path);
    if (table_path.is_relative()) table_path = std::filesystem::path(path).parent_path() / table_path;
    try {
      (void)CoveringTable::load(table_path.string());
      r.spec->covering_table_path = table_path.string();
    } catch (const std::exception& ex) {
      r.errors.push_back(std::string("covering_table: ") + ex.what());
      r.spec.reset();
    }
  }
  return r;
}

ScenarioConfig apply_sweep(const ExperimentSpec& spec, double value,
                           ExplorationOptions* exploration) {
  ScenarioConfig cfg = spec.base;
  switch (spec.axis) {
    case SweepAxis::kNumDevices: cfg.num_devices = static_cast<int>(value); break;
    case SweepAxis::kNumSubchannels: cfg.num_subchannels = static_cast<int>(value); break;
    case SweepAxis::kQuota: cfg.quota = static_cast<int>(value); break;
    case SweepAxis::kPMax: cfg.p_max_w = value; break;
    case SweepAxis::kTMax:
      if (exploration) exploration->t_max = static_cast<int>(value);
      break;
  }
  return cfg;
}

std::vector<Cell> plan_cells(const ExperimentSpec& spec) {
  std::vector<Cell> cells;
  int index = 0;
  for (double value : spec.values) {
    for (int rep = 0; rep < spec.num_seeds; ++rep) {
      const std::uint64_t layout = combine_seeds(
          {spec.base.rng_seed, std::bit_cast<std::uint64_t>(value), static_cast<std::uint64_t>(rep)});
      for (Variant v : spec.variants) {
        const std::uint64_t explore = combine_seeds({layout, static_cast<std::uint64_t>(v)});
        cells.push_back({index++, value, v, rep, layout, explore});
      }
    }
  }
  return cells;
}

std::vector<CellOutcome> execute_cells(const ExperimentSpec& spec, const RunSettings& settings) {
  ExperimentSpec effective = spec;
  if (settings.seed_override) effective.base.rng_seed = *settings.seed_override;
  const auto cells = plan_cells(effective);

  VariantOptions base_options;
  if (!effective.covering_table_path.empty()) {
    base_options.covering_table = CoveringTable::load(effective.covering_table_path);
  }

  std::vector<CellOutcome> outcomes(cells.size());
  std::vector<std::exception_ptr> failures(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell& cell = cells[i];
      try {
        const auto start = std::chrono::steady_clock::now();
        VariantOptions options = base_options;
        options.exploration = effective.exploration;
        ScenarioConfig cfg = apply_sweep(effective, cell.sweep_value, &options.exploration);
        cfg.rng_seed = cell.layout_seed;
        options.exploration.seed = cell.exploration_seed;
        const Solution s = run_variant(cfg, cell.variant, options);
        CellOutcome& out = outcomes[i];
        out.cell = cell;
        out.record = make_record(s, cfg, cell.variant, cell.sweep_value, cell.replicate);
        if (settings.unit_report) out.units = s.units;
        out.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const int workers = std::max(1, std::min<int>(settings.workers, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return outcomes;
}

void write_results_csv(std::ostream& out, SweepAxis axis, const std::vector<CellOutcome>& cells) {
  out << "seed,variant,sweep_axis,sweep_value,replicate,M,N,K,q,p_max_w,ee,accessed,swaps,"
         "outer_iterations\n";
  for (const auto& c : cells) {
    const auto& r = c.record;
    out << r.seed << ',' << to_string(r.variant) << ',' << to_string(axis) << ','
        << fmt(r.sweep_value) << ',' << r.replicate << ',' << r.num_devices << ','
        << r.num_subchannels << ',' << r.num_stop_points << ',' << r.quota << ','
        << fmt(r.p_max_w) << ',' << fmt(r.ee) << ',' << r.accessed << ',' << r.swaps << ','
        << r.outer_iterations << '\n';
  }
}

void write_summary_csv(std::ostream& out, SweepAxis axis, const std::vector<GroupReport>& groups) {
  out << "variant,sweep_axis,sweep_value,runs,ee_mean,ee_ci95,accessed_mean,accessed_ci95,"
         "swaps_mean,swaps_ci95\n";
  for (const auto& g : groups) {
    out << to_string(g.variant) << ',' << to_string(axis) << ',' << fmt(g.sweep_value) << ','
        << g.ee.count << ',' << fmt(g.ee.mean) << ',' << fmt(g.ee.ci95) << ','
        << fmt(g.accessed.mean) << ',' << fmt(g.accessed.ci95) << ',' << fmt(g.swaps.mean)
        << ',' << fmt(g.swaps.ci95) << '\n';
  }
}

void write_swap_cdf_csv(std::ostream& out, SweepAxis axis, const std::vector<GroupReport>& groups) {
  out << "variant,sweep_axis,sweep_value,swaps,cdf\n";
  for (const auto& g : groups) {
    for (const auto& p : g.swap_cdf) {
      out << to_string(g.variant) << ',' << to_string(axis) << ',' << fmt(g.sweep_value) << ','
          << fmt(p.value) << ',' << fmt(p.cumulative) << '\n';
    }
  }
}

void write_units_csv(std::ostream& out, const std::vector<CellOutcome>& cells) {
  out << "seed,variant,sweep_value,replicate,subchannel,stop_point,devices,rate,power_w,ee,tau,"
         "dinkelbach_iterations\n";
  for (const auto& c : cells) {
    for (const auto& u : c.units) {
      out << c.record.seed << ',' << to_string(c.record.variant) << ',' << fmt(c.cell.sweep_value)
          << ',' << c.cell.replicate << ',' << u.unit.subchannel << ',' << u.unit.stop_point
          << ',';
      for (std::size_t i = 0; i < u.devices.size(); ++i) out << (i ? " " : "") << u.devices[i];
      out << ',' << fmt(u.rate) << ',' << fmt(u.power_w) << ',' << fmt(u.ee) << ','
          << fmt(u.tau) << ',' << u.dinkelbach_iterations << '\n';
    }
  }
}

void write_timings_csv(std::ostream& out, const std::vector<CellOutcome>& cells) {
  out << "cell,seed,variant,sweep_value,replicate,wall_time_s\n";
  for (const auto& c : cells) {
    out << c.cell.index << ',' << c.record.seed << ',' << to_string(c.record.variant) << ','
        << fmt(c.cell.sweep_value) << ',' << c.cell.replicate << ',' << fmt(c.wall_time_s)
        << '\n';
  }
}

void write_snapshot_csv(std::ostream& out, const Solution& solution) {
  out << "kind,id,x_m,y_m,subchannel,stop_point\n";
  for (const auto& sp : solution.deployment.stop_points) {
    out << "stop_point," << sp.id << ',' << fmt(sp.x_m) << ',' << fmt(sp.y_m) << ",-1," << sp.id
        << '\n';
  }
  for (const auto& d : solution.devices) {
    const auto u = solution.matching.unit_of(d.id);
    out << "device," << d.id << ',' << fmt(d.x_m) << ',' << fmt(d.y_m) << ','
        << (u ? u->subchannel : -1) << ',' << (u ? u->stop_point : -1) << '\n';
  }
}

void write_matching_csv(std::ostream& out, const Matching& matching) {
  out << "device,subchannel,stop_point\n";
  for (int m = 0; m < matching.num_devices(); ++m) {
    if (const auto u = matching.unit_of(m)) {
      out << m << ',' << u->subchannel << ',' << u->stop_point << '\n';
    }
  }
}

int run_experiment(const ExperimentSpec& spec, const RunSettings& settings, std::ostream& log) {
  namespace fs = std::filesystem;
  std::vector<CellOutcome> outcomes;
  try {
    outcomes = execute_cells(spec, settings);
  } catch (const std::exception& ex) {
    log << "error: " << ex.what() << '\n';
    return 1;
  }

  std::error_code ec;
  fs::create_directories(spec.output_dir, ec);
  if (ec) {
    log << "error: cannot create " << spec.output_dir << ": " << ec.message() << '\n';
    return 1;
  }
  const fs::path dir(spec.output_dir);
  auto write = [&](const char* name, const std::function<void(std::ostream&)>& body) {
    std::ofstream f(dir / name, std::ios::binary);
    body(f);
    if (!f) {
      log << "error: failed writing " << (dir / name).string() << '\n';
      return false;
    }
    return true;
  };

  std::vector<RunRecord> records;
  records.reserve(outcomes.size());
  for (const auto& o : outcomes) records.push_back(o.record);
  const auto groups = collect_metrics(records);

  bool ok = write("results.csv", [&](std::ostream& o) { write_results_csv(o, spec.axis, outcomes); });
  ok = ok && write("summary.csv", [&](std::ostream& o) { write_summary_csv(o, spec.axis, groups); });
  ok = ok && write("swap_cdf.csv", [&](std::ostream& o) { write_swap_cdf_csv(o, spec.axis, groups); });
  if (settings.unit_report) {
    ok = ok && write("units.csv", [&](std::ostream& o) { write_units_csv(o, outcomes); });
  }
  if (settings.record_timing) {
    ok = ok && write("timings.csv", [&](std::ostream& o) { write_timings_csv(o, outcomes); });
  }

  // Layout of the first cell, re-solved for its full state.
  if (ok && !outcomes.empty()) {
    const auto& first = outcomes.front().cell;
    ExperimentSpec effective = spec;
    if (settings.seed_override) effective.base.rng_seed = *settings.seed_override;
    VariantOptions options;
    if (!spec.covering_table_path.empty()) {
      options.covering_table = CoveringTable::load(spec.covering_table_path);
    }
    options.exploration = effective.exploration;
    ScenarioConfig cfg = apply_sweep(effective, first.sweep_value, &options.exploration);
    cfg.rng_seed = first.layout_seed;
    options.exploration.seed = first.exploration_seed;
    const Solution s = run_variant(cfg, first.variant, options);
    ok = write("snapshot.csv", [&](std::ostream& o) { write_snapshot_csv(o, s); });
  }
  if (!ok) return 1;
  log << "wrote " << outcomes.size() << " runs to " << spec.output_dir << '\n';
  return 0;
}

}  // namespace uavnoma
