#include "uavnoma/assignment.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "uavnoma/errors.hpp"

namespace uavnoma {

namespace {

void insert_sorted(std::vector<int>& v, int x) { v.insert(std::lower_bound(v.begin(), v.end(), x), x); }

void erase_sorted(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) throw std::logic_error("device not in unit member list");
  v.erase(it);
}

}  // namespace

Matching::Matching(int num_devices, int num_subchannels, int num_stop_points, int quota)
    : num_subchannels_(num_subchannels),
      num_stop_points_(num_stop_points),
      quota_(quota),
      device_unit_(static_cast<std::size_t>(num_devices), -1),
      unit_members_(static_cast<std::size_t>(num_subchannels * num_stop_points)) {}

std::optional<UnitId> Matching::unit_of(int device) const {
  const int idx = device_unit_[device];
  if (idx < 0) return std::nullopt;
  return unit_at(idx);
}

void Matching::assign(int device, UnitId u) {
  if (is_matched(device)) {
    throw std::logic_error("device " + std::to_string(device) + " is already matched");
  }
  if (!has_vacancy(u)) {
    throw QuotaViolation("unit (" + std::to_string(u.subchannel) + ", " +
                         std::to_string(u.stop_point) + ") is full");
  }
  const int idx = unit_index(u);
  device_unit_[device] = idx;
  insert_sorted(unit_members_[idx], device);
  ++matched_count_;
}

void Matching::unassign(int device) {
  const int idx = device_unit_[device];
  if (idx < 0) return;
  erase_sorted(unit_members_[idx], device);
  device_unit_[device] = -1;
  --matched_count_;
}

void Matching::move(int device, UnitId to) {
  if (!is_matched(device)) {
    throw std::logic_error("device " + std::to_string(device) + " is not matched");
  }
  if (device_unit_[device] == unit_index(to)) return;
  if (!has_vacancy(to)) {
    throw QuotaViolation("unit (" + std::to_string(to.subchannel) + ", " +
                         std::to_string(to.stop_point) + ") is full");
  }
  unassign(device);
  assign(device, to);
}

void Matching::exchange(int a, int b) {
  const int ua = device_unit_[a];
  const int ub = device_unit_[b];
  if (ua < 0 || ub < 0) throw std::logic_error("exchange needs two matched devices");
  if (ua == ub) return;
  erase_sorted(unit_members_[ua], a);
  erase_sorted(unit_members_[ub], b);
  insert_sorted(unit_members_[ub], a);
  insert_sorted(unit_members_[ua], b);
  device_unit_[a] = ub;
  device_unit_[b] = ua;
}

bool Matching::consistent() const {
  int matched = 0;
  for (int m = 0; m < num_devices(); ++m) {
    const int idx = device_unit_[m];
    if (idx < 0) continue;
    if (idx >= num_units()) return false;
    ++matched;
    if (!std::binary_search(unit_members_[idx].begin(), unit_members_[idx].end(), m)) {
      return false;
    }
  }
  int listed = 0;
  for (int u = 0; u < num_units(); ++u) {
    const auto& mem = unit_members_[u];
    if (static_cast<int>(mem.size()) > quota_) return false;
    if (!std::is_sorted(mem.begin(), mem.end())) return false;
    for (int m : mem) {
      if (m < 0 || m >= num_devices() || device_unit_[m] != u) return false;
    }
    listed += static_cast<int>(mem.size());
  }
  return listed == matched && matched == matched_count_;
}

}  // namespace uavnoma
