#pragma once

#include <compare>
#include <optional>
#include <vector>

namespace uavnoma {

// A (subchannel, stop point) pair: the capacity-q slot devices match with.
struct UnitId {
  int subchannel = 0;
  int stop_point = 0;

  friend auto operator<=>(const UnitId&, const UnitId&) = default;
};

// Many-to-one assignment of devices to SS units. Each device holds at most
// one unit, each unit at most `quota` devices, and the two directions of the
// map always agree. LoS feasibility is enforced by the algorithms that build
// a Matching, not by this container.
class Matching {
 public:
  Matching() = default;
  Matching(int num_devices, int num_subchannels, int num_stop_points, int quota);

  int num_devices() const { return static_cast<int>(device_unit_.size()); }
  int num_subchannels() const { return num_subchannels_; }
  int num_stop_points() const { return num_stop_points_; }
  int quota() const { return quota_; }
  int num_units() const { return num_subchannels_ * num_stop_points_; }

  // Units are indexed stop-point major: k * N + n.
  int unit_index(UnitId u) const { return u.stop_point * num_subchannels_ + u.subchannel; }
  UnitId unit_at(int index) const {
    return {index % num_subchannels_, index / num_subchannels_};
  }

  std::optional<UnitId> unit_of(int device) const;
  bool is_matched(int device) const { return device_unit_[device] >= 0; }
  // Ascending device ids.
  const std::vector<int>& members(UnitId u) const { return unit_members_[unit_index(u)]; }
  int occupancy(UnitId u) const { return static_cast<int>(members(u).size()); }
  bool has_vacancy(UnitId u) const { return occupancy(u) < quota_; }
  int matched_count() const { return matched_count_; }

  // `device` must be unmatched. Throws QuotaViolation when `u` is full.
  void assign(int device, UnitId u);
  void unassign(int device);
  // Relocates a matched device. Throws QuotaViolation when `to` is full.
  void move(int device, UnitId to);
  // Both devices matched; they trade units.
  void exchange(int a, int b);

  // Checks quota and bidirectional consistency from scratch.
  bool consistent() const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  int num_subchannels_ = 0;
  int num_stop_points_ = 0;
  int quota_ = 0;
  int matched_count_ = 0;
  std::vector<int> device_unit_;  // unit index or -1
  std::vector<std::vector<int>> unit_members_;
};

}  // namespace uavnoma
