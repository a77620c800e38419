#include "uavnoma/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "uavnoma/errors.hpp"

namespace uavnoma {

namespace {

double received_sum(const FractionalProblem& problem, std::span<const double> powers) {
  double s = 0.0;
  for (int m = 0; m < problem.size(); ++m) s += powers[m] * problem.gains[m];
  return s;
}

}  // namespace

FractionalProblem FractionalProblem::from_cluster(const Cluster& cluster,
                                                  const ScenarioConfig& config) {
  FractionalProblem p;
  p.gains.reserve(cluster.members.size());
  for (const auto& mem : cluster.members) p.gains.push_back(mem.gain);
  p.noise_power_w = config.noise_power_w;
  p.p_min_w = config.p_min_w;
  p.p_max_w = config.p_max_w;
  p.p_circuit_w = config.p_circuit_w;
  return p;
}

double telescoped_rate(const FractionalProblem& problem, std::span<const double> powers) {
  return std::log2(1.0 + received_sum(problem, powers) / problem.noise_power_w);
}

double consumed_power(const FractionalProblem& problem, std::span<const double> powers) {
  double total = 0.0;
  for (int m = 0; m < problem.size(); ++m) total += powers[m] + problem.p_circuit_w;
  return total;
}

double dinkelbach_objective(const FractionalProblem& problem, double tau,
                            std::span<const double> powers) {
  return telescoped_rate(problem, powers) - tau * consumed_power(problem, powers);
}

double rate_gradient(const FractionalProblem& problem, std::span<const double> powers, int m) {
  return problem.gains[m] /
         (std::numbers::ln2 * (problem.noise_power_w + received_sum(problem, powers)));
}

std::vector<double> inner_maximize(const FractionalProblem& problem, double tau) {
  const int n = problem.size();
  if (tau <= 0.0) return std::vector<double>(n, problem.p_max_w);

  std::vector<double> p(n, problem.p_min_w);
  const double span = problem.p_max_w - problem.p_min_w;
  double s = received_sum(problem, p);
  for (int m = 0; m < n && span > 0.0; ++m) {
    const double g = problem.gains[m];
    const double grad_low = g / (std::numbers::ln2 * (problem.noise_power_w + s));
    if (grad_low <= tau) break;  // later devices have smaller gains
    const double s_high = s + span * g;
    const double grad_high = g / (std::numbers::ln2 * (problem.noise_power_w + s_high));
    if (grad_high >= tau) {
      p[m] = problem.p_max_w;
      s = s_high;
      continue;
    }
    // Stationary level of S for this device, mapped back to its power.
    const double s_star = g / (tau * std::numbers::ln2) - problem.noise_power_w;
    p[m] = std::clamp(problem.p_min_w + (s_star - s) / g, problem.p_min_w, problem.p_max_w);
    break;
  }
  return p;
}

KktReport check_kkt(const FractionalProblem& problem, double tau,
                    std::span<const double> powers, double tol) {
  KktReport report;
  for (int m = 0; m < problem.size(); ++m) {
    const double residual = rate_gradient(problem, powers, m) - tau;
    double miss = 0.0;
    const bool at_min = powers[m] <= problem.p_min_w;
    const bool at_max = powers[m] >= problem.p_max_w;
    if (at_min && at_max) {
      miss = 0.0;  // degenerate box
    } else if (at_min) {
      miss = std::max(0.0, residual);
    } else if (at_max) {
      miss = std::max(0.0, -residual);
    } else {
      miss = std::abs(residual);
    }
    if (powers[m] < problem.p_min_w || powers[m] > problem.p_max_w) {
      miss = std::numeric_limits<double>::infinity();
    }
    report.worst_violation = std::max(report.worst_violation, miss);
  }
  report.satisfied = report.worst_violation <= tol;
  return report;
}

DinkelbachResult dabpa(const FractionalProblem& problem, const DinkelbachOptions& options) {
  DinkelbachResult result;
  if (problem.size() == 0) return result;

  double tau = 0.0;
  double f_max = options.tolerance + 0.01;
  while (f_max > options.tolerance) {
    if (result.iterations() >= options.max_iterations) {
      std::ostringstream msg;
      msg << "Dinkelbach did not converge in " << options.max_iterations
          << " iterations (residual " << f_max << ")";
      throw IterationLimit(msg.str());
    }
    result.powers = inner_maximize(problem, tau);
    const double rate = telescoped_rate(problem, result.powers);
    const double power = consumed_power(problem, result.powers);
    f_max = rate - tau * power;
    result.trace.push_back({tau, f_max, result.iterations()});
    tau = rate / power;
  }
  result.ratio = tau;
  return result;
}

namespace {

struct GridSearch {
  const FractionalProblem& problem;
  std::vector<double> grid;
  std::vector<double> current;
  std::vector<double> best;
  double best_ratio = -1.0;

  void descend(int m, double s, double d) {
    const int n = problem.size();
    if (m == n - 1) {
      const double g = problem.gains[m];
      for (double p : grid) {
        const double ratio = std::log2(1.0 + (s + p * g) / problem.noise_power_w) /
                             (d + p + problem.p_circuit_w);
        if (ratio > best_ratio) {
          best_ratio = ratio;
          current[m] = p;
          best = current;
        }
      }
      return;
    }
    for (double p : grid) {
      current[m] = p;
      descend(m + 1, s + p * problem.gains[m], d + p + problem.p_circuit_w);
    }
  }
};

}  // namespace

OracleResult brute_force_power_oracle(const FractionalProblem& problem, double grid_step) {
  if (problem.size() > 4) {
    throw ClusterTooLarge("grid oracle supports at most 4 devices, got " +
                          std::to_string(problem.size()));
  }
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (problem.size() == 0) return {};

  GridSearch search{problem, {}, std::vector<double>(problem.size()), {}};
  const double span = problem.p_max_w - problem.p_min_w;
  const auto steps = static_cast<long>(std::floor(span / grid_step + 1e-9));
  for (long i = 0; i <= steps; ++i) search.grid.push_back(problem.p_min_w + i * grid_step);
  if (problem.p_max_w - search.grid.back() > 1e-12 * problem.p_max_w) {
    search.grid.push_back(problem.p_max_w);
  }
  search.descend(0, 0.0, 0.0);
  return {search.best, search.best_ratio};
}

}  // namespace uavnoma
