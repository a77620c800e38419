#pragma once

#include <vector>

#include "uavnoma/channel.hpp"
#include "uavnoma/random.hpp"
#include "uavnoma/scenario.hpp"

namespace uavnoma::testing {

inline Deployment custom_deployment(std::vector<Point> centers, double los_radius_m,
                                    double altitude_m = 150.0) {
  Deployment d;
  d.los_radius_m = los_radius_m;
  d.altitude_m = altitude_m;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    d.stop_points.push_back({static_cast<int>(i), centers[i].x_m, centers[i].y_m});
  }
  return d;
}

inline std::vector<Device> devices_at(const std::vector<Point>& points) {
  std::vector<Device> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.push_back({static_cast<int>(i), points[i].x_m, points[i].y_m});
  }
  return out;
}

// Seeded layout on the reference geometry.
inline Network reference_network(int num_devices, std::uint64_t seed, int quota = 3) {
  ScenarioConfig c;
  c.num_devices = num_devices;
  c.quota = quota;
  c.rng_seed = seed;
  return Network(c, generate_devices(c), plan_stop_points(c));
}

// Two stop points at (+-175, 0) with a LoS radius that reaches most of a
// 350 m cell from either one.
inline Network small_two_sp_network(int num_devices, std::uint64_t seed) {
  ScenarioConfig c;
  c.num_devices = num_devices;
  c.num_subchannels = 2;
  c.quota = 2;
  c.rng_seed = seed;
  return Network(c, generate_devices(c),
                 custom_deployment({{-175.0, 0.0}, {175.0, 0.0}}, 400.0));
}

inline std::vector<double> random_gains(Rng& rng, int n) {
  // Horizontal distances up to the cell radius at 150 m altitude.
  std::vector<double> g;
  for (int i = 0; i < n; ++i) {
    const double d = 350.0 * rng.uniform();
    g.push_back(1.4e-4 / (d * d + 150.0 * 150.0));
  }
  return g;
}

}  // namespace uavnoma::testing
