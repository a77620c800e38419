#pragma once

#include <cstdint>
#include <vector>

#include "uavnoma/assignment.hpp"
#include "uavnoma/channel.hpp"

namespace uavnoma {

enum class SwapKind {
  kExchange,        // two matched devices on different units trade places
  kMoveToVacancy,   // a matched device swaps with an open slot
  kAdmitUnmatched,  // an unmatched device takes an open slot
};

struct SwapCandidate {
  SwapKind kind = SwapKind::kExchange;
  int first = 0;
  int second = -1;  // partner device, exchanges only
  UnitId vacancy;   // target unit, moves and admissions only

  friend bool operator==(const SwapCandidate&, const SwapCandidate&) = default;
};

// Stop points in LoS of each device, strongest gain first, ties by id.
std::vector<std::vector<int>> preference_lists(const Network& network);

// Initialization: devices propose to their preferred stop point, each stop
// point hands out its subchannels round robin, and a stop point leaves a
// device's list once all of its units are full.
Matching initialize_matching(const Network& network);

// All LoS-feasible swaps of `matching`: exchanges (m < m', different units),
// then matched devices into vacancies, then unmatched devices into
// vacancies. Units are visited in index order.
std::vector<SwapCandidate> enumerate_swap_candidates(const Network& network,
                                                     const Matching& matching);

// Structurally applicable to the current state (both endpoints where the
// kind requires, vacancy still open, distinct units) and LoS feasible at
// the post-swap placement.
bool is_swap_feasible(const Network& network, const Matching& matching,
                      const SwapCandidate& candidate);

// EE(after) - EE(before), computed over the two affected units only.
double swap_ee_delta(const Network& network, const Matching& matching,
                     const PowerAllocation& powers, const SwapCandidate& candidate);

// Feasible and strictly EE-improving with powers held fixed. Improvements
// below 1e-12 of the affected units' EE count as rounding, not progress.
bool is_swap_blocking(const Network& network, const Matching& matching,
                      const SwapCandidate& candidate, const PowerAllocation& powers);

// Only the candidate's endpoints change. Throws QuotaViolation when the
// target unit is full.
Matching apply_swap(Matching matching, const SwapCandidate& candidate);
void apply_swap_in_place(Matching& matching, const SwapCandidate& candidate);

struct SwapSearchResult {
  Matching matching;
  int swap_count = 0;
  int passes = 0;
  std::vector<double> ee_trace;  // EE before any swap, then after each one
};

// Repeated passes over the candidate list, applying every blocking swap as
// it is found, until a full pass applies none.
SwapSearchResult jdssa1(const Network& network, const PowerAllocation& powers,
                        Matching initial);
SwapSearchResult jdssa1(const Network& network, const PowerAllocation& powers);

struct ExplorationOptions {
  int t_max = 10000;
  double epsilon = 0.01;
  std::uint64_t seed = 1;
};

struct ExplorationResult {
  Matching best;
  double best_ee = 0.0;
  Matching last;
  double last_ee = 0.0;
  int swap_count = 0;
  int exploration_count = 0;
  int iterations = 0;
  std::vector<double> best_ee_by_iteration;
};

// Like jdssa1 for t_max passes, except that a non-blocking feasible swap is
// also taken with probability epsilon. Returns the best state visited.
ExplorationResult jdssa2(const Network& network, const PowerAllocation& powers,
                         const ExplorationOptions& options, Matching initial);
ExplorationResult jdssa2(const Network& network, const PowerAllocation& powers,
                         const ExplorationOptions& options);

// No candidate is swap-blocking.
bool verify_exchange_stable(const Network& network, const Matching& matching,
                            const PowerAllocation& powers);

// Every matched device is in LoS of its unit's stop point and the container
// invariants hold.
bool is_valid_matching(const Network& network, const Matching& matching);

}  // namespace uavnoma
