#include "uavnoma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uavnoma {

double channel_gain(const Device& device, const StopPoint& sp, double altitude_m,
                    double unit_gain) {
  return unit_gain / (horizontal_distance_sq(device, sp) + altitude_m * altitude_m);
}

bool PowerAllocation::approx_equal(const PowerAllocation& other, double tol) const {
  if (watts_.size() != other.watts_.size()) return false;
  for (std::size_t i = 0; i < watts_.size(); ++i) {
    if (std::abs(watts_[i] - other.watts_[i]) > tol) return false;
  }
  return true;
}

Cluster make_cluster(UnitId unit, std::vector<ClusterMember> members) {
  std::sort(members.begin(), members.end(), [](const ClusterMember& a, const ClusterMember& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    return a.device < b.device;
  });
  return {unit, std::move(members)};
}

Network::Network(ScenarioConfig config, std::vector<Device> devices, Deployment deployment)
    : config_(std::move(config)), devices_(std::move(devices)), deployment_(std::move(deployment)) {
  const std::size_t k_count = deployment_.stop_points.size();
  gains_.resize(devices_.size() * k_count);
  los_.resize(devices_.size() * k_count);
  for (std::size_t m = 0; m < devices_.size(); ++m) {
    for (std::size_t k = 0; k < k_count; ++k) {
      const auto& sp = deployment_.stop_points[k];
      gains_[m * k_count + k] =
          channel_gain(devices_[m], sp, deployment_.altitude_m, config_.unit_gain);
      los_[m * k_count + k] = uavnoma::in_los(devices_[m], sp, deployment_) ? 1 : 0;
    }
  }
}

Matching Network::empty_matching() const {
  return Matching(num_devices(), num_subchannels(), num_stop_points(), quota());
}

Cluster Network::cluster(const Matching& matching, UnitId unit) const {
  return cluster(unit, matching.members(unit));
}

Cluster Network::cluster(UnitId unit, std::span<const int> device_ids) const {
  std::vector<ClusterMember> members;
  members.reserve(device_ids.size());
  for (int m : device_ids) members.push_back({m, gain(m, unit.stop_point)});
  return make_cluster(unit, std::move(members));
}

std::vector<double> sinr_profile(const Cluster& cluster, const PowerAllocation& powers,
                                 double noise_power_w) {
  if (cluster.empty()) throw std::invalid_argument("SINR of an empty cluster");
  std::vector<double> sinr(cluster.members.size());
  // Walk from the last decoded member backwards, accumulating the
  // interference each earlier member sees from later ones.
  double residual = 0.0;
  for (std::size_t i = cluster.members.size(); i-- > 0;) {
    const auto& mem = cluster.members[i];
    const double received = powers[mem.device] * mem.gain;
    sinr[i] = received / (residual + noise_power_w);
    residual += received;
  }
  return sinr;
}

double ss_unit_rate(const Cluster& cluster, const PowerAllocation& powers,
                    double noise_power_w) {
  if (cluster.empty()) return 0.0;
  double rate = 0.0;
  for (double s : sinr_profile(cluster, powers, noise_power_w)) rate += std::log2(1.0 + s);
  return rate;
}

double ss_unit_power(const Cluster& cluster, const PowerAllocation& powers,
                     double p_circuit_w) {
  double total = 0.0;
  for (const auto& mem : cluster.members) total += powers[mem.device] + p_circuit_w;
  return total;
}

double ss_unit_ee(const Cluster& cluster, const PowerAllocation& powers,
                  const ScenarioConfig& config) {
  if (cluster.empty()) return 0.0;
  return ss_unit_rate(cluster, powers, config.noise_power_w) /
         ss_unit_power(cluster, powers, config.p_circuit_w);
}

double network_ee(const Network& network, const Matching& matching,
                  const PowerAllocation& powers) {
  double ee = 0.0;
  for (int u = 0; u < matching.num_units(); ++u) {
    const UnitId unit = matching.unit_at(u);
    if (matching.occupancy(unit) == 0) continue;
    ee += ss_unit_ee(network.cluster(matching, unit), powers, network.config());
  }
  return ee;
}

}  // namespace uavnoma
