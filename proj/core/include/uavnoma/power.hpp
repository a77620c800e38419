#pragma once

#include <span>
#include <vector>

#include "uavnoma/channel.hpp"

namespace uavnoma {

// Energy-efficiency maximization inside one SS unit:
//   max  log2(1 + sum p_m g_m / noise) / sum (p_m + P0)
//   s.t. P_min <= p_m <= P_max.
// Gains are held in SIC decoding order (descending).
struct FractionalProblem {
  std::vector<double> gains;
  double noise_power_w = 0.0;
  double p_min_w = 0.0;
  double p_max_w = 0.0;
  double p_circuit_w = 0.0;

  int size() const { return static_cast<int>(gains.size()); }

  static FractionalProblem from_cluster(const Cluster& cluster, const ScenarioConfig& config);
};

double telescoped_rate(const FractionalProblem& problem, std::span<const double> powers);

// sum (p_m + P0)
double consumed_power(const FractionalProblem& problem, std::span<const double> powers);

// Parametric objective: rate - tau * consumed power.
double dinkelbach_objective(const FractionalProblem& problem, double tau,
                            std::span<const double> powers);

// d rate / d p_m, the quantity every KKT test compares against tau.
double rate_gradient(const FractionalProblem& problem, std::span<const double> powers, int m);

// Global maximizer of the parametric objective over the power box.
//
// The rate only sees S = sum p_m g_m, and a unit of S is cheapest from the
// strongest device, so the maximizer raises powers in decoding order: every
// device before the marginal one sits at P_max, every device after it at
// P_min, and the marginal device solves g_m / (ln2 (noise + S)) = tau in
// closed form (clamped to the box).
std::vector<double> inner_maximize(const FractionalProblem& problem, double tau);

struct KktReport {
  bool satisfied = true;
  double worst_violation = 0.0;  // largest gradient-sign or stationarity miss
};

// For each m: at P_min the gradient may not exceed tau, at P_max it may not
// fall below tau, and in between it must equal tau, all within `tol`.
KktReport check_kkt(const FractionalProblem& problem, double tau,
                    std::span<const double> powers, double tol = 1e-9);

struct DinkelbachState {
  double tau = 0.0;    // parameter the inner problem was solved at
  double f_max = 0.0;  // parametric optimum at that tau
  int iteration = 0;
};

struct DinkelbachResult {
  std::vector<double> powers;  // aligned with problem.gains
  double ratio = 0.0;          // rate / consumed power at `powers`
  std::vector<DinkelbachState> trace;

  int iterations() const { return static_cast<int>(trace.size()); }
};

struct DinkelbachOptions {
  double tolerance = 1e-8;
  int max_iterations = 100;
};

// Dinkelbach iteration from tau = 0 until the parametric optimum drops to
// the tolerance. Throws IterationLimit when it does not.
DinkelbachResult dabpa(const FractionalProblem& problem, const DinkelbachOptions& options = {});

struct OracleResult {
  std::vector<double> powers;
  double ratio = 0.0;
};

// Exhaustive search over the grid P_min, P_min + step, ..., P_max (P_max is
// always included). Throws ClusterTooLarge for more than four devices.
OracleResult brute_force_power_oracle(const FractionalProblem& problem, double grid_step);

}  // namespace uavnoma
