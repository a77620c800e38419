#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls the library's rate or EE code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "uavnoma/channel.hpp"
#include "uavnoma/matching.hpp"

namespace uavnoma::testing {

// SINRs straight from the SIC definition: sort by gain (ties by id), each
// device is interfered by every weaker one.
inline std::vector<double> reference_sinrs(const std::vector<double>& gains,
                                           const std::vector<double>& powers,
                                           double noise) {
  std::vector<int> order(gains.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return gains[a] > gains[b]; });
  std::vector<double> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    double interference = 0.0;
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      interference += powers[order[j]] * gains[order[j]];
    }
    const int m = order[i];
    out.push_back(powers[m] * gains[m] / (interference + noise));
  }
  return out;
}

inline double reference_unit_ee(const std::vector<double>& gains,
                                const std::vector<double>& powers, double noise,
                                double circuit) {
  if (gains.empty()) return 0.0;
  double rate = 0.0;
  for (double s : reference_sinrs(gains, powers, noise)) rate += std::log2(1.0 + s);
  double consumed = 0.0;
  for (double p : powers) consumed += p + circuit;
  return rate / consumed;
}

// Network EE from the raw geometry, ignoring the Network gain cache.
inline double reference_network_ee(const Network& net, const Matching& matching,
                                   const PowerAllocation& powers) {
  const auto& cfg = net.config();
  const auto& sps = net.deployment().stop_points;
  double total = 0.0;
  for (int u = 0; u < matching.num_units(); ++u) {
    const UnitId unit = matching.unit_at(u);
    std::vector<double> g, p;
    for (int m : matching.members(unit)) {
      const auto& d = net.devices()[m];
      const auto& sp = sps[unit.stop_point];
      const double dx = d.x_m - sp.x_m, dy = d.y_m - sp.y_m;
      const double h = net.deployment().altitude_m;
      g.push_back(cfg.unit_gain / (dx * dx + dy * dy + h * h));
      p.push_back(powers[m]);
    }
    total += reference_unit_ee(g, p, cfg.noise_power_w, cfg.p_circuit_w);
  }
  return total;
}

inline bool geometric_los(const Network& net, int device, int stop_point) {
  const auto& d = net.devices()[device];
  const auto& sp = net.deployment().stop_points[stop_point];
  const double dx = d.x_m - sp.x_m, dy = d.y_m - sp.y_m;
  const double r = net.deployment().los_radius_m;
  return dx * dx + dy * dy <= r * r;
}

// Every LoS and quota respecting matching in which the `required` devices
// are matched; the rest may also stay unmatched.
inline void for_each_matching(const Network& net, const std::vector<bool>& required,
                              const std::function<void(const Matching&)>& visit) {
  Matching m = net.empty_matching();
  const int units = m.num_units();
  std::function<void(int)> rec = [&](int device) {
    if (device == net.num_devices()) {
      visit(m);
      return;
    }
    if (!required[device]) rec(device + 1);
    for (int u = 0; u < units; ++u) {
      const UnitId unit = m.unit_at(u);
      if (!geometric_los(net, device, unit.stop_point) || !m.has_vacancy(unit)) continue;
      m.assign(device, unit);
      rec(device + 1);
      m.unassign(device);
    }
  };
  rec(0);
}

struct ExhaustiveOptimum {
  double ee = -1.0;
  long visited = 0;
};

// Best matching that keeps every device of `start` matched. Swaps never
// unmatch a device, so this is everything reachable from `start`.
inline ExhaustiveOptimum best_reachable_matching(const Network& net, const Matching& start,
                                                 const PowerAllocation& powers) {
  std::vector<bool> required(static_cast<std::size_t>(net.num_devices()));
  for (int d = 0; d < net.num_devices(); ++d) required[d] = start.is_matched(d);
  ExhaustiveOptimum best;
  for_each_matching(net, required, [&](const Matching& m) {
    ++best.visited;
    best.ee = std::max(best.ee, reference_network_ee(net, m, powers));
  });
  return best;
}

// Largest number of devices placeable under LoS and quota (augmenting
// paths over stop points with capacity N*q).
inline int max_placeable(const Network& net) {
  const int k_count = net.num_stop_points();
  const int cap = net.num_subchannels() * net.quota();
  std::vector<int> owner(static_cast<std::size_t>(net.num_devices()), -1);
  std::vector<std::vector<int>> held(static_cast<std::size_t>(k_count));
  std::function<bool(int, std::vector<char>&)> augment = [&](int d, std::vector<char>& seen) {
    for (int k = 0; k < k_count; ++k) {
      if (!geometric_los(net, d, k) || seen[k]) continue;
      seen[k] = 1;
      if (static_cast<int>(held[k].size()) < cap) {
        held[k].push_back(d);
        owner[d] = k;
        return true;
      }
      for (std::size_t i = 0; i < held[k].size(); ++i) {
        const int other = held[k][i];
        held[k][i] = d;
        owner[d] = k;
        if (augment(other, seen)) return true;
        held[k][i] = other;
        owner[d] = -1;
      }
    }
    return false;
  };
  int placed = 0;
  for (int d = 0; d < net.num_devices(); ++d) {
    std::vector<char> seen(static_cast<std::size_t>(k_count), 0);
    if (augment(d, seen)) ++placed;
  }
  return placed;
}

// Brute-force neighbourhood: every single exchange, move or admission that
// respects LoS and quota, scored by full recomputation. Returns the largest
// improvement over the current EE.
inline double best_single_swap_gain(const Network& net, const Matching& matching,
                                    const PowerAllocation& powers) {
  const double base = reference_network_ee(net, matching, powers);
  double best = -std::numeric_limits<double>::infinity();
  const int n = net.num_devices();
  auto score = [&](const Matching& m) {
    best = std::max(best, reference_network_ee(net, m, powers) - base);
  };
  for (int a = 0; a < n; ++a) {
    const auto ua = matching.unit_of(a);
    for (int b = a + 1; b < n && ua; ++b) {
      const auto ub = matching.unit_of(b);
      if (!ub || *ua == *ub) continue;
      if (!geometric_los(net, a, ub->stop_point) || !geometric_los(net, b, ua->stop_point)) {
        continue;
      }
      Matching m = matching;
      m.exchange(a, b);
      score(m);
    }
    for (int u = 0; u < matching.num_units(); ++u) {
      const UnitId unit = matching.unit_at(u);
      if (!matching.has_vacancy(unit) || (ua && *ua == unit)) continue;
      if (!geometric_los(net, a, unit.stop_point)) continue;
      Matching m = matching;
      if (ua) {
        m.move(a, unit);
      } else {
        m.assign(a, unit);
      }
      score(m);
    }
  }
  return best;
}

}  // namespace uavnoma::testing
