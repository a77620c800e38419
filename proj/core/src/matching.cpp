#include "uavnoma/matching.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "uavnoma/random.hpp"

namespace uavnoma {

namespace {

constexpr double kRelativeImprovement = 1e-12;

double unit_ee(const Network& network, const PowerAllocation& powers, UnitId unit,
               std::span<const int> device_ids) {
  if (device_ids.empty()) return 0.0;
  return ss_unit_ee(network.cluster(unit, device_ids), powers, network.config());
}

std::vector<int> replaced(const std::vector<int>& members, int out, int in) {
  std::vector<int> v;
  v.reserve(members.size() + 1);
  for (int m : members) {
    if (m != out) v.push_back(m);
  }
  if (in >= 0) v.push_back(in);
  return v;
}

bool improves(double delta, double before) {
  return delta > 0.0 && delta > kRelativeImprovement * std::abs(before);
}

}  // namespace

std::vector<std::vector<int>> preference_lists(const Network& network) {
  std::vector<std::vector<int>> prefs(network.num_devices());
  for (int m = 0; m < network.num_devices(); ++m) {
    for (int k = 0; k < network.num_stop_points(); ++k) {
      if (network.in_los(m, k)) prefs[m].push_back(k);
    }
    std::stable_sort(prefs[m].begin(), prefs[m].end(), [&](int a, int b) {
      return network.gain(m, a) > network.gain(m, b);
    });
  }
  return prefs;
}

Matching initialize_matching(const Network& network) {
  Matching matching = network.empty_matching();
  const int n_sub = network.num_subchannels();
  auto prefs = preference_lists(network);
  std::vector<std::deque<int>> remaining(prefs.size());
  for (std::size_t m = 0; m < prefs.size(); ++m) {
    remaining[m].assign(prefs[m].begin(), prefs[m].end());
  }
  std::vector<int> pointer(network.num_stop_points(), 0);

  auto saturated = [&](int k) {
    for (int n = 0; n < n_sub; ++n) {
      if (matching.has_vacancy({n, k})) return false;
    }
    return true;
  };

  std::vector<int> unmatched(network.num_devices());
  for (int m = 0; m < network.num_devices(); ++m) unmatched[m] = m;

  while (!unmatched.empty()) {
    std::vector<int> still_unmatched;
    for (int m : unmatched) {
      if (remaining[m].empty()) continue;  // gives up for good
      const int k = remaining[m].front();
      const UnitId unit{pointer[k], k};
      const bool accepted = matching.has_vacancy(unit);
      if (accepted) matching.assign(m, unit);
      pointer[k] = (pointer[k] + 1) % n_sub;
      if (!accepted) {
        if (saturated(k)) remaining[m].pop_front();
        still_unmatched.push_back(m);
      }
    }
    unmatched = std::move(still_unmatched);
  }
  return matching;
}

std::vector<SwapCandidate> enumerate_swap_candidates(const Network& network,
                                                     const Matching& matching) {
  std::vector<SwapCandidate> out;
  const int n_dev = matching.num_devices();
  for (int a = 0; a < n_dev; ++a) {
    if (!matching.is_matched(a)) continue;
    for (int b = a + 1; b < n_dev; ++b) {
      if (!matching.is_matched(b)) continue;
      SwapCandidate c{SwapKind::kExchange, a, b, {}};
      if (is_swap_feasible(network, matching, c)) out.push_back(c);
    }
  }
  for (SwapKind kind : {SwapKind::kMoveToVacancy, SwapKind::kAdmitUnmatched}) {
    const bool want_matched = kind == SwapKind::kMoveToVacancy;
    for (int m = 0; m < n_dev; ++m) {
      if (matching.is_matched(m) != want_matched) continue;
      for (int u = 0; u < matching.num_units(); ++u) {
        SwapCandidate c{kind, m, -1, matching.unit_at(u)};
        if (is_swap_feasible(network, matching, c)) out.push_back(c);
      }
    }
  }
  return out;
}

bool is_swap_feasible(const Network& network, const Matching& matching,
                      const SwapCandidate& c) {
  switch (c.kind) {
    case SwapKind::kExchange: {
      if (c.first == c.second) return false;
      const auto ua = matching.unit_of(c.first);
      const auto ub = matching.unit_of(c.second);
      if (!ua || !ub || *ua == *ub) return false;
      return network.in_los(c.first, ub->stop_point) && network.in_los(c.second, ua->stop_point);
    }
    case SwapKind::kMoveToVacancy: {
      const auto ua = matching.unit_of(c.first);
      if (!ua || *ua == c.vacancy) return false;
      return matching.has_vacancy(c.vacancy) && network.in_los(c.first, c.vacancy.stop_point);
    }
    case SwapKind::kAdmitUnmatched:
      return !matching.is_matched(c.first) && matching.has_vacancy(c.vacancy) &&
             network.in_los(c.first, c.vacancy.stop_point);
  }
  return false;
}

namespace {

struct Delta {
  double before = 0.0;
  double after = 0.0;
};

Delta evaluate(const Network& network, const Matching& matching, const PowerAllocation& powers,
               const SwapCandidate& c) {
  Delta d;
  switch (c.kind) {
    case SwapKind::kExchange: {
      const UnitId ua = *matching.unit_of(c.first);
      const UnitId ub = *matching.unit_of(c.second);
      const auto& ma = matching.members(ua);
      const auto& mb = matching.members(ub);
      d.before = unit_ee(network, powers, ua, ma) + unit_ee(network, powers, ub, mb);
      d.after = unit_ee(network, powers, ua, replaced(ma, c.first, c.second)) +
                unit_ee(network, powers, ub, replaced(mb, c.second, c.first));
      break;
    }
    case SwapKind::kMoveToVacancy: {
      const UnitId ua = *matching.unit_of(c.first);
      const auto& ma = matching.members(ua);
      const auto& mb = matching.members(c.vacancy);
      d.before = unit_ee(network, powers, ua, ma) + unit_ee(network, powers, c.vacancy, mb);
      d.after = unit_ee(network, powers, ua, replaced(ma, c.first, -1)) +
                unit_ee(network, powers, c.vacancy, replaced(mb, -1, c.first));
      break;
    }
    case SwapKind::kAdmitUnmatched: {
      const auto& mb = matching.members(c.vacancy);
      d.before = unit_ee(network, powers, c.vacancy, mb);
      d.after = unit_ee(network, powers, c.vacancy, replaced(mb, -1, c.first));
      break;
    }
  }
  return d;
}

}  // namespace

double swap_ee_delta(const Network& network, const Matching& matching,
                     const PowerAllocation& powers, const SwapCandidate& candidate) {
  const Delta d = evaluate(network, matching, powers, candidate);
  return d.after - d.before;
}

bool is_swap_blocking(const Network& network, const Matching& matching,
                      const SwapCandidate& candidate, const PowerAllocation& powers) {
  if (!is_swap_feasible(network, matching, candidate)) return false;
  const Delta d = evaluate(network, matching, powers, candidate);
  return improves(d.after - d.before, d.before);
}

void apply_swap_in_place(Matching& matching, const SwapCandidate& c) {
  switch (c.kind) {
    case SwapKind::kExchange:
      matching.exchange(c.first, c.second);
      break;
    case SwapKind::kMoveToVacancy:
      matching.move(c.first, c.vacancy);
      break;
    case SwapKind::kAdmitUnmatched:
      matching.assign(c.first, c.vacancy);
      break;
  }
}

Matching apply_swap(Matching matching, const SwapCandidate& candidate) {
  apply_swap_in_place(matching, candidate);
  return matching;
}

SwapSearchResult jdssa1(const Network& network, const PowerAllocation& powers,
                        Matching initial) {
  SwapSearchResult r{std::move(initial), 0, 0, {}};
  r.ee_trace.push_back(network_ee(network, r.matching, powers));
  for (;;) {
    int applied = 0;
    for (const auto& c : enumerate_swap_candidates(network, r.matching)) {
      if (!is_swap_blocking(network, r.matching, c, powers)) continue;
      apply_swap_in_place(r.matching, c);
      r.ee_trace.push_back(network_ee(network, r.matching, powers));
      ++applied;
    }
    ++r.passes;
    r.swap_count += applied;
    if (applied == 0) break;
  }
  return r;
}

SwapSearchResult jdssa1(const Network& network, const PowerAllocation& powers) {
  return jdssa1(network, powers, initialize_matching(network));
}

ExplorationResult jdssa2(const Network& network, const PowerAllocation& powers,
                         const ExplorationOptions& options, Matching initial) {
  if (options.t_max < 1) throw std::invalid_argument("t_max must be at least 1");
  if (!(options.epsilon >= 0.0 && options.epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1)");
  }
  Rng rng(options.seed);
  ExplorationResult r;
  r.last = std::move(initial);
  r.last_ee = network_ee(network, r.last, powers);
  r.best = r.last;
  r.best_ee = r.last_ee;
  r.best_ee_by_iteration.reserve(static_cast<std::size_t>(options.t_max));

  for (int t = 0; t < options.t_max; ++t) {
    int applied = 0;
    for (const auto& c : enumerate_swap_candidates(network, r.last)) {
      if (!is_swap_feasible(network, r.last, c)) continue;
      const Delta d = evaluate(network, r.last, powers, c);
      if (!improves(d.after - d.before, d.before)) {
        if (options.epsilon == 0.0 || rng.uniform() >= options.epsilon) continue;
        ++r.exploration_count;
      }
      apply_swap_in_place(r.last, c);
      r.last_ee = network_ee(network, r.last, powers);
      ++applied;
      if (improves(r.last_ee - r.best_ee, r.best_ee)) {
        r.best = r.last;
        r.best_ee = r.last_ee;
      }
    }
    r.swap_count += applied;
    r.iterations = t + 1;
    r.best_ee_by_iteration.push_back(r.best_ee);
    // Without exploration a quiet pass is a fixed point.
    if (applied == 0 && options.epsilon == 0.0) break;
  }
  return r;
}

ExplorationResult jdssa2(const Network& network, const PowerAllocation& powers,
                         const ExplorationOptions& options) {
  return jdssa2(network, powers, options, initialize_matching(network));
}

bool verify_exchange_stable(const Network& network, const Matching& matching,
                            const PowerAllocation& powers) {
  for (const auto& c : enumerate_swap_candidates(network, matching)) {
    if (is_swap_blocking(network, matching, c, powers)) return false;
  }
  return true;
}

bool is_valid_matching(const Network& network, const Matching& matching) {
  if (!matching.consistent()) return false;
  if (matching.num_devices() != network.num_devices() ||
      matching.num_stop_points() != network.num_stop_points() ||
      matching.num_subchannels() != network.num_subchannels()) {
    return false;
  }
  for (int m = 0; m < matching.num_devices(); ++m) {
    const auto u = matching.unit_of(m);
    if (u && !network.in_los(m, u->stop_point)) return false;
  }
  return true;
}

}  // namespace uavnoma
