#pragma once

#include <span>
#include <vector>

#include "uavnoma/assignment.hpp"
#include "uavnoma/scenario.hpp"

namespace uavnoma {

// Free-space LoS gain eta / d^2 with d the 3-D device-to-UAV distance.
double channel_gain(const Device& device, const StopPoint& sp, double altitude_m,
                    double unit_gain);

// Per-device transmit power in watts, indexed by device id. Unmatched
// devices keep a value so a later admission has a defined power.
class PowerAllocation {
 public:
  PowerAllocation() = default;
  PowerAllocation(int num_devices, double initial_w)
      : watts_(static_cast<std::size_t>(num_devices), initial_w) {}

  double operator[](int device) const { return watts_[device]; }
  void set(int device, double w) { watts_[device] = w; }
  int size() const { return static_cast<int>(watts_.size()); }
  const std::vector<double>& values() const { return watts_; }

  // Element-wise |a - b| <= tol.
  bool approx_equal(const PowerAllocation& other, double tol) const;

 private:
  std::vector<double> watts_;
};

struct ClusterMember {
  int device = 0;
  double gain = 0.0;
};

// Devices sharing one SS unit in SIC decoding order: descending gain, ties
// by ascending device id.
struct Cluster {
  UnitId unit;
  std::vector<ClusterMember> members;

  bool empty() const { return members.empty(); }
  int size() const { return static_cast<int>(members.size()); }
};

// Sorts members into decoding order.
Cluster make_cluster(UnitId unit, std::vector<ClusterMember> members);

// Devices, stop points and the gain table between them. Gains are
// precomputed for every (device, stop point) pair; LoS is tracked
// separately since gains are defined everywhere.
class Network {
 public:
  Network(ScenarioConfig config, std::vector<Device> devices, Deployment deployment);

  const ScenarioConfig& config() const { return config_; }
  const std::vector<Device>& devices() const { return devices_; }
  const Deployment& deployment() const { return deployment_; }

  int num_devices() const { return static_cast<int>(devices_.size()); }
  int num_stop_points() const { return deployment_.size(); }
  int num_subchannels() const { return config_.num_subchannels; }
  int quota() const { return config_.quota; }

  double gain(int device, int stop_point) const {
    return gains_[static_cast<std::size_t>(device) * num_stop_points() + stop_point];
  }
  bool in_los(int device, int stop_point) const {
    return los_[static_cast<std::size_t>(device) * num_stop_points() + stop_point] != 0;
  }

  // Empty matching sized for this network.
  Matching empty_matching() const;

  Cluster cluster(const Matching& matching, UnitId unit) const;
  Cluster cluster(UnitId unit, std::span<const int> device_ids) const;

 private:
  ScenarioConfig config_;
  std::vector<Device> devices_;
  Deployment deployment_;
  std::vector<double> gains_;
  std::vector<char> los_;
};

// SINR of each member in decoding order; the last member sees only noise.
// Throws std::invalid_argument on an empty cluster.
std::vector<double> sinr_profile(const Cluster& cluster, const PowerAllocation& powers,
                                 double noise_power_w);

// Sum of log2(1 + SINR) in bit/s/Hz; 0 for an empty cluster.
double ss_unit_rate(const Cluster& cluster, const PowerAllocation& powers,
                    double noise_power_w);

// Transmit plus circuit power of all members; 0 for an empty cluster.
double ss_unit_power(const Cluster& cluster, const PowerAllocation& powers,
                     double p_circuit_w);

// Rate over power of one unit; empty units contribute 0.
double ss_unit_ee(const Cluster& cluster, const PowerAllocation& powers,
                  const ScenarioConfig& config);

// Sum of ss_unit_ee over all SS units.
double network_ee(const Network& network, const Matching& matching,
                  const PowerAllocation& powers);

}  // namespace uavnoma
