#include "uavnoma/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "uavnoma/errors.hpp"
#include "uavnoma/random.hpp"

namespace uavnoma {

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

std::vector<std::string> ScenarioConfig::problems() const {
  std::vector<std::string> out;
  auto positive = [&](const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      out.push_back(std::string(name) + ": must be a finite positive value");
    }
  };
  positive("area_radius_m", area_radius_m);
  positive("uav_altitude_m", uav_altitude_m);
  if (!(min_elevation_rad > 0.0 && min_elevation_rad < std::numbers::pi / 2)) {
    out.push_back("min_elevation_rad: must lie strictly between 0 and pi/2");
  }
  if (num_devices < 0) out.push_back("num_devices: must be non-negative");
  if (num_subchannels <= 0) out.push_back("num_subchannels: must be positive");
  if (quota <= 0) out.push_back("quota: must be positive");
  positive("unit_gain", unit_gain);
  positive("noise_power_w", noise_power_w);
  positive("p_max_w", p_max_w);
  positive("p_min_w", p_min_w);
  positive("p_circuit_w", p_circuit_w);
  if (p_min_w > p_max_w) {
    out.push_back("p_min_w: must not exceed p_max_w");
  }
  return out;
}

void ScenarioConfig::validate() const {
  auto p = problems();
  if (!p.empty()) throw ConfigError(std::move(p));
}

CoveringTable::CoveringTable(std::vector<CoveringEntry> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const CoveringEntry& a, const CoveringEntry& b) {
              return a.num_disks < b.num_disks;
            });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.num_disks <= 0 || static_cast<int>(e.centers.size()) != e.num_disks) {
      throw std::invalid_argument("covering table row K=" + std::to_string(e.num_disks) +
                                  " must list exactly K centers");
    }
    if (!(e.radius_ratio > 0.0)) {
      throw std::invalid_argument("covering table ratio must be positive");
    }
    if (i > 0 && entries_[i - 1].num_disks == e.num_disks) {
      throw std::invalid_argument("duplicate covering table row K=" +
                                  std::to_string(e.num_disks));
    }
    if (i > 0 && e.radius_ratio > entries_[i - 1].radius_ratio) {
      throw std::invalid_argument("covering table ratios must be non-increasing in K");
    }
  }
}

CoveringTable CoveringTable::builtin() {
  const double s3 = std::sqrt(3.0);
  return CoveringTable({
      {1, 1.0, {{0.0, 0.0}}},
      // Two disks cannot beat one; both sit at the origin.
      {2, 1.0, {{0.0, 0.0}, {0.0, 0.0}}},
      {3, s3 / 2.0, {{-s3 / 4.0, 0.25}, {0.0, -0.5}, {s3 / 4.0, 0.25}}},
      {4, std::sqrt(2.0) / 2.0, {{-0.5, 0.5}, {-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}}},
  });
}

CoveringTable CoveringTable::parse(std::istream& in) {
  std::vector<CoveringEntry> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    CoveringEntry e;
    if (!(fields >> e.num_disks)) continue;  // blank line
    if (!(fields >> e.radius_ratio)) {
      throw std::invalid_argument("covering table line " + std::to_string(line_no) +
                                  ": missing ratio");
    }
    Point p;
    while (fields >> p.x_m) {
      if (!(fields >> p.y_m)) {
        throw std::invalid_argument("covering table line " + std::to_string(line_no) +
                                    ": odd number of center coordinates");
      }
      e.centers.push_back(p);
    }
    if (!fields.eof()) {
      throw std::invalid_argument("covering table line " + std::to_string(line_no) +
                                  ": unparsable value");
    }
    rows.push_back(std::move(e));
  }
  return CoveringTable(std::move(rows));
}

CoveringTable CoveringTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open covering table " + path);
  return parse(in);
}

std::vector<Device> generate_devices(const ScenarioConfig& config) {
  std::vector<Device> devices;
  devices.reserve(static_cast<std::size_t>(std::max(config.num_devices, 0)));
  Rng rng(config.rng_seed);
  for (int m = 0; m < config.num_devices; ++m) {
    // Inverse-CDF radius keeps the density uniform in area.
    const double r = config.area_radius_m * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    devices.push_back({m, r * std::cos(phi), r * std::sin(phi)});
  }
  return devices;
}

double los_radius(double altitude_m, double min_elevation_rad) {
  if (!(min_elevation_rad > 0.0 && min_elevation_rad < std::numbers::pi / 2)) {
    throw std::invalid_argument("minimum elevation must lie in (0, pi/2)");
  }
  return altitude_m / std::tan(min_elevation_rad);
}

Deployment plan_stop_points(double area_radius_m, double los_radius_m,
                            const CoveringTable& table, double altitude_m) {
  if (!(los_radius_m > 0.0)) throw std::invalid_argument("LoS radius must be positive");
  Deployment d;
  d.los_radius_m = los_radius_m;
  d.altitude_m = altitude_m;
  if (los_radius_m >= area_radius_m) {
    d.stop_points.push_back({0, 0.0, 0.0});
    return d;
  }
  for (const auto& e : table.entries()) {
    if (e.radius_ratio * area_radius_m <= los_radius_m) {
      for (int k = 0; k < e.num_disks; ++k) {
        d.stop_points.push_back({k, e.centers[k].x_m * area_radius_m,
                                 e.centers[k].y_m * area_radius_m});
      }
      return d;
    }
  }
  std::ostringstream msg;
  msg << "LoS radius " << los_radius_m << " m is below every covering radius for a "
      << area_radius_m << " m area";
  throw UncoverableArea(msg.str());
}

Deployment plan_stop_points(const ScenarioConfig& config, const CoveringTable& table) {
  return plan_stop_points(config.area_radius_m,
                          los_radius(config.uav_altitude_m, config.min_elevation_rad), table,
                          config.uav_altitude_m);
}

Deployment stationary_deployment(const ScenarioConfig& config) {
  Deployment d;
  d.stop_points.push_back({0, 0.0, 0.0});
  d.los_radius_m = los_radius(config.uav_altitude_m, config.min_elevation_rad);
  d.altitude_m = config.uav_altitude_m;
  return d;
}

bool in_los(const Device& device, const StopPoint& sp, const Deployment& deployment) {
  return horizontal_distance_sq(device, sp) <= deployment.los_radius_m * deployment.los_radius_m;
}

void write_devices_csv(std::ostream& out, const std::vector<Device>& devices) {
  out << "id,x_m,y_m\n";
  const auto old_precision = out.precision(10);
  for (const auto& d : devices) out << d.id << ',' << d.x_m << ',' << d.y_m << '\n';
  out.precision(old_precision);
}

}  // namespace uavnoma
