#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

namespace uavnoma {

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

// Network and device parameters. Defaults are the reference simulation
// setup: 350 m cell, UAV at 150 m, pi/6 LoS elevation, 5 subchannels,
// quota 3, -99 dBm noise, 100..500 mW transmit power, 1 mW circuit power.
struct ScenarioConfig {
  double area_radius_m = 350.0;
  double uav_altitude_m = 150.0;
  double min_elevation_rad = std::numbers::pi / 6.0;
  int num_devices = 60;
  int num_subchannels = 5;
  int quota = 3;
  double unit_gain = 1.4e-4;
  double noise_power_w = 1.2589254117941663e-13;  // -99 dBm
  double p_max_w = 0.5;
  double p_min_w = 0.1;
  double p_circuit_w = 1e-3;
  std::uint64_t rng_seed = 1;

  // Empty when every field satisfies its bound; otherwise one message per
  // violated field, prefixed with the field name.
  std::vector<std::string> problems() const;
  // Throws ConfigError listing problems().
  void validate() const;
};

struct Point {
  double x_m = 0.0;
  double y_m = 0.0;
};

struct Device {
  int id = 0;
  double x_m = 0.0;
  double y_m = 0.0;
};

struct StopPoint {
  int id = 0;
  double x_m = 0.0;
  double y_m = 0.0;
};

struct Deployment {
  std::vector<StopPoint> stop_points;
  double los_radius_m = 0.0;
  double altitude_m = 0.0;

  int size() const { return static_cast<int>(stop_points.size()); }
};

// One covering arrangement of the unit disk: `centers.size()` congruent
// disks of radius `radius_ratio` cover it.
struct CoveringEntry {
  int num_disks = 0;
  double radius_ratio = 0.0;
  std::vector<Point> centers;  // normalized to a unit target radius
};

class CoveringTable {
 public:
  CoveringTable() = default;
  // Entries are sorted by num_disks. Throws std::invalid_argument when a
  // row has the wrong number of centers or the ratios increase with K.
  explicit CoveringTable(std::vector<CoveringEntry> entries);

  // K = 1..4 arrangements: full disk at the origin for K <= 2, the
  // three-disk triangle (sqrt(3)/2) and the four-disk square (sqrt(2)/2).
  static CoveringTable builtin();

  // Rows of `K ratio x1 y1 ... xK yK`; '#' starts a comment.
  static CoveringTable parse(std::istream& in);
  static CoveringTable load(const std::string& path);

  const std::vector<CoveringEntry>& entries() const { return entries_; }

 private:
  std::vector<CoveringEntry> entries_;
};

// Devices i.i.d. uniform over the target disk, ids 0..M-1, reproducible
// from config.rng_seed.
std::vector<Device> generate_devices(const ScenarioConfig& config);

// Horizontal LoS reach of a UAV at `altitude_m`: H * cot(theta).
double los_radius(double altitude_m, double min_elevation_rad);

// Smallest covering-table K whose scaled radius is within the LoS radius.
// R_LoS >= R short-circuits to a single stop point at the origin.
Deployment plan_stop_points(double area_radius_m, double los_radius_m,
                            const CoveringTable& table, double altitude_m = 0.0);

// Deployment derived from the config with the built-in table.
Deployment plan_stop_points(const ScenarioConfig& config,
                            const CoveringTable& table = CoveringTable::builtin());

// Single stop point above the cell centre.
Deployment stationary_deployment(const ScenarioConfig& config);

inline double horizontal_distance_sq(const Device& d, const StopPoint& sp) {
  const double dx = d.x_m - sp.x_m;
  const double dy = d.y_m - sp.y_m;
  return dx * dx + dy * dy;
}

bool in_los(const Device& device, const StopPoint& sp, const Deployment& deployment);

// id,x_m,y_m
void write_devices_csv(std::ostream& out, const std::vector<Device>& devices);

}  // namespace uavnoma
