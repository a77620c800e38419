// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "uavnoma/orchestrator.hpp"
#include "uavnoma/power.hpp"
#include "uavnoma/random.hpp"

using namespace uavnoma;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

std::uint64_t layout_seed(std::uint64_t stream, int replicate) {
  return combine_seeds({stream, static_cast<std::uint64_t>(replicate)});
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

template <typename... Args>
std::string format(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome deployment() {
  ScenarioConfig c;
  const auto d = plan_stop_points(c);
  bool ok = d.size() == 4;
  std::vector<std::pair<double, double>> want{{-175, 175}, {-175, -175}, {175, -175}, {175, 175}};
  for (const auto& [x, y] : want) {
    bool found = false;
    for (const auto& sp : d.stop_points) {
      found = found || (std::abs(sp.x_m - x) < 1e-9 && std::abs(sp.y_m - y) < 1e-9);
    }
    ok = ok && found;
  }
  return {ok, format("K=%d, R_LoS=%.2f m", d.size(), d.los_radius_m)};
}

Outcome covering() {
  const auto table = CoveringTable::builtin();
  const int side = 113;  // about 10^4 samples inside the disk
  long worst = 0, samples = 0;
  std::ostringstream detail;
  for (const auto& e : table.entries()) {
    long uncovered = 0;
    samples = 0;
    for (int i = 0; i < side; ++i) {
      for (int j = 0; j < side; ++j) {
        const double x = -1.0 + 2.0 * i / (side - 1);
        const double y = -1.0 + 2.0 * j / (side - 1);
        if (x * x + y * y > 1.0) continue;
        ++samples;
        const double r = e.radius_ratio + 1e-12;
        bool hit = false;
        for (const auto& c : e.centers) {
          const double dx = x - c.x_m, dy = y - c.y_m;
          hit = hit || dx * dx + dy * dy <= r * r;
        }
        if (!hit) ++uncovered;
      }
    }
    worst = std::max(worst, uncovered);
    detail << "K=" << e.num_disks << ":" << uncovered << " ";
  }
  detail << "uncovered of " << samples << " points";
  return {worst == 0, detail.str()};
}

Outcome telescoping() {
  Rng rng(20261016);
  ScenarioConfig c;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(rng.uniform() * 3);
    const auto gains = testing::random_gains(rng, n);
    std::vector<ClusterMember> members;
    PowerAllocation p(n, 0.0);
    double received = 0.0;
    for (int i = 0; i < n; ++i) {
      members.push_back({i, gains[i]});
      p.set(i, c.p_min_w + (c.p_max_w - c.p_min_w) * rng.uniform());
      received += p[i] * gains[i];
    }
    const double sum = ss_unit_rate(make_cluster({0, 0}, members), p, c.noise_power_w);
    const double closed = std::log2(1.0 + received / c.noise_power_w);
    worst = std::max(worst, std::abs(sum - closed) / closed);
  }
  return {worst <= 1e-9, format("worst relative gap %.2e over 1000 clusters", worst)};
}

Outcome exchange_stability() {
  int stable = 0, monotone = 0, runs = 0;
  for (int i = 0; i < 100; ++i) {
    const int m = std::vector<int>{10, 30, 50}[i % 3];
    const auto net = testing::reference_network(m, layout_seed(4, i));
    const PowerAllocation p(m, net.config().p_max_w);
    const auto r = jdssa1(net, p);
    ++runs;
    if (verify_exchange_stable(net, r.matching, p)) ++stable;
    bool up = true;
    for (std::size_t k = 1; k < r.ee_trace.size(); ++k) up = up && r.ee_trace[k] > r.ee_trace[k - 1];
    if (up) ++monotone;
  }
  return {stable == runs && monotone == runs,
          format("%d/%d stable, %d/%d strictly increasing traces", stable, runs, monotone, runs)};
}

Outcome swap_scale() {
  std::vector<double> total, first_stage;
  for (int i = 0; i < 100; ++i) {
    ScenarioConfig c;
    c.num_devices = 50;
    c.rng_seed = layout_seed(5, i);
    total.push_back(run_variant(c, Variant::kJuddsra1).swap_count);
    const auto net = testing::reference_network(50, c.rng_seed);
    first_stage.push_back(jdssa1(net, PowerAllocation(50, c.p_max_w)).swap_count);
  }
  const double m = mean(total);
  return {m >= 20.0 && m <= 200.0,
          format("mean swaps %.1f (first matching stage %.1f, max %.0f) over 100 runs", m,
                 mean(first_stage), *std::max_element(total.begin(), total.end()))};
}

Outcome dabpa_optimality() {
  Rng rng(606);
  ScenarioConfig c;
  const double step = 1e-3;
  int below = 0, kkt_fail = 0, tau_fail = 0, term_fail = 0;
  double worst_gap = -1e300;
  for (int t = 0; t < 200; ++t) {
    FractionalProblem p;
    p.gains = testing::random_gains(rng, 1 + t % 3);
    std::sort(p.gains.rbegin(), p.gains.rend());
    p.noise_power_w = c.noise_power_w;
    p.p_min_w = c.p_min_w;
    p.p_max_w = c.p_max_w;
    p.p_circuit_w = c.p_circuit_w;

    const auto r = dabpa(p);
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      const auto inner = inner_maximize(p, r.trace[k].tau);
      if (!check_kkt(p, r.trace[k].tau, inner).satisfied) ++kkt_fail;
      if (k > 0 && !(r.trace[k].tau > r.trace[k - 1].tau)) ++tau_fail;
    }
    if (!(r.trace.back().f_max <= 1e-8) || r.iterations() > 100) ++term_fail;

    // Ratio can move by at most sum(L_m) * step between grid neighbours.
    const double s_min = p.p_min_w * std::accumulate(p.gains.begin(), p.gains.end(), 0.0);
    const double d_min = p.size() * (p.p_min_w + p.p_circuit_w);
    const double n_max = std::log2(1.0 + p.p_max_w *
                                             std::accumulate(p.gains.begin(), p.gains.end(), 0.0) /
                                             p.noise_power_w);
    double slack = 0.0;
    for (double g : p.gains) {
      slack += step * (g / (std::numbers::ln2 * (p.noise_power_w + s_min)) / d_min +
                       n_max / (d_min * d_min));
    }
    const auto oracle = brute_force_power_oracle(p, step);
    worst_gap = std::max(worst_gap, oracle.ratio - r.ratio);
    if (r.ratio < oracle.ratio - slack) ++below;
  }
  return {below == 0 && kkt_fail == 0 && tau_fail == 0 && term_fail == 0,
          format("below oracle %d, KKT failures %d, non-increasing tau %d, bad termination %d; "
                 "max(oracle - dabpa) %.2e",
                 below, kkt_fail, tau_fail, term_fail, worst_gap)};
}

Outcome capacity() {
  std::ostringstream why;
  bool ok = true;

  // Every device reaches the single stop point.
  int coverage_miss = 0;
  for (int q : {1, 2, 3}) {
    for (int m = 10; m <= 80; m += 10) {
      ScenarioConfig c;
      c.num_devices = m;
      c.quota = q;
      c.uav_altitude_m = 400.0;
      c.rng_seed = layout_seed(7, m * 10 + q);
      const auto s = run_variant(c, Variant::kJuddsra1);
      const int k = s.deployment.size();
      if (s.accessed_count != std::min(m, q * c.num_subchannels * k)) ++coverage_miss;
    }
  }
  ok = ok && coverage_miss == 0;
  why << "full-LoS cells off by capacity: " << coverage_miss << "/24; ";

  // Reference geometry.
  const int seeds = 20;
  int q3_full = 0, q1_twenty = 0, order_breaks = 0, placeable_60 = 0;
  std::vector<double> q3_counts;
  for (int i = 0; i < seeds; ++i) {
    ScenarioConfig c;
    c.num_devices = 60;
    c.rng_seed = layout_seed(77, i);
    const auto s3 = run_variant(c, Variant::kJuddsra1);
    const auto s1 = run_variant(c, Variant::kOma);
    q3_counts.push_back(s3.accessed_count);
    if (s3.accessed_count == 60) ++q3_full;
    if (s1.accessed_count == 20) ++q1_twenty;
    if (testing::max_placeable(testing::reference_network(60, c.rng_seed)) == 60) ++placeable_60;
  }
  ok = ok && q3_full == seeds && q1_twenty == seeds;
  why << "M=60 q=3: " << q3_full << "/" << seeds << " runs with 60 accessed (mean "
      << mean(q3_counts) << ", " << placeable_60 << "/" << seeds
      << " layouts admit 60 under LoS); q=1: " << q1_twenty << "/" << seeds << " with 20; ";

  for (int m = 10; m <= 80; m += 10) {
    for (int i = 0; i < 5; ++i) {
      int acc[4] = {0, 0, 0, 0};
      for (int q : {1, 2, 3}) {
        ScenarioConfig c;
        c.num_devices = m;
        c.quota = q;
        c.rng_seed = layout_seed(700 + m, i);
        acc[q] = run_variant(c, Variant::kJuddsra1).accessed_count;
      }
      if (!(acc[3] >= acc[2] && acc[2] >= acc[1])) ++order_breaks;
    }
  }
  ok = ok && order_breaks == 0;
  why << "q3>=q2>=q1 broken in " << order_breaks << "/40 paired runs";
  return {ok, why.str()};
}

Outcome dominance() {
  std::vector<double> d_fixed, d_noswap, d_still, ee_main, ee_fixed, ee_noswap, ee_still;
  for (int i = 0; i < 50; ++i) {
    ScenarioConfig c;
    c.num_devices = 40;
    c.rng_seed = layout_seed(8, i);
    const double main = run_variant(c, Variant::kJuddsra1).ee;
    const double fixed = run_variant(c, Variant::kFixedPower).ee;
    const double noswap = run_variant(c, Variant::kNoSwap).ee;
    const double still = run_variant(c, Variant::kStationaryUav).ee;
    ee_main.push_back(main);
    ee_fixed.push_back(fixed);
    ee_noswap.push_back(noswap);
    ee_still.push_back(still);
    d_fixed.push_back(main - fixed);
    d_noswap.push_back(main - noswap);
    d_still.push_back(main - still);
  }
  const bool ok = mean(ee_main) > mean(ee_fixed) && mean(ee_main) > mean(ee_noswap) &&
                  mean(ee_main) > mean(ee_still) && mean(d_fixed) > 0 && mean(d_noswap) > 0 &&
                  mean(d_still) > 0;
  return {ok, format("mean EE juddsra %.1f, fixed-power %.1f, no-swap %.1f, stationary %.1f",
                     mean(ee_main), mean(ee_fixed), mean(ee_noswap), mean(ee_still))};
}

Outcome quota_trend() {
  std::vector<double> ee[4];
  for (int i = 0; i < 50; ++i) {
    for (int q : {1, 2, 3}) {
      ScenarioConfig c;
      c.num_devices = 60;
      c.quota = q;
      c.rng_seed = layout_seed(9, i);
      ee[q].push_back(run_variant(c, Variant::kJuddsra1).ee);
    }
  }
  const double m1 = mean(ee[1]), m2 = mean(ee[2]), m3 = mean(ee[3]);
  return {m1 >= m2 && m2 >= m3, format("mean EE q=1 %.1f, q=2 %.1f, q=3 %.1f", m1, m2, m3)};
}

Outcome small_optimum() {
  int hits = 0, exceed = 0;
  std::vector<double> ee2, ee1;
  for (int i = 0; i < 50; ++i) {
    const auto net = testing::small_two_sp_network(6, layout_seed(10, i));
    const PowerAllocation p(6, net.config().p_max_w);
    const auto best = testing::best_reachable_matching(net, initialize_matching(net), p);
    ExplorationOptions o;
    o.t_max = 10000;
    o.epsilon = 0.01;
    o.seed = layout_seed(1010, i);
    const auto r = jdssa2(net, p, o);
    const auto s = jdssa1(net, p);
    ee2.push_back(r.best_ee);
    ee1.push_back(s.ee_trace.back());
    if (r.best_ee > best.ee * (1 + 1e-12)) ++exceed;
    if (r.best_ee >= best.ee * (1 - 1e-9)) ++hits;
  }
  const bool ok = hits >= 45 && exceed == 0 && mean(ee2) >= mean(ee1);
  return {ok, format("optimum reached %d/50, exceeded %d; mean EE JDSSA-2 %.2f vs JDSSA-1 %.2f",
                     hits, exceed, mean(ee2), mean(ee1))};
}

Outcome convergence() {
  int converged = 0, monotone = 0, most = 0;
  for (int i = 0; i < 100; ++i) {
    ScenarioConfig c;
    c.num_devices = 10 + 10 * (i % 8);
    c.rng_seed = layout_seed(11, i);
    try {
      const auto s = run_variant(c, Variant::kJuddsra1);
      ++converged;
      most = std::max(most, s.outer_iterations);
      bool up = true;
      for (std::size_t k = 1; k < s.ee_trace.size(); ++k) {
        up = up && s.ee_trace[k] >= s.ee_trace[k - 1] * (1 - 1e-12);
      }
      if (up) ++monotone;
    } catch (const std::exception&) {
    }
  }
  return {converged == 100 && monotone == 100,
          format("%d/100 converged (at most %d outer iterations), %d/100 non-decreasing traces",
                 converged, most, monotone)};
}

Outcome saturation() {
  // Up to the reference 500 mW (about 27 dBm).
  const std::vector<double> p_max_dbm{-30, -25, -20, -15, -10, -5, 0, 5, 10, 15, 20, 27};
  std::vector<double> means;
  for (double pm : p_max_dbm) {
    std::vector<double> ee;
    for (int i = 0; i < 20; ++i) {
      ScenarioConfig c;
      c.num_devices = 40;
      c.p_min_w = dbm_to_watts(-40.0);
      c.p_max_w = dbm_to_watts(pm);
      c.rng_seed = layout_seed(12, i);
      ee.push_back(run_variant(c, Variant::kJuddsra1).ee);
    }
    means.push_back(mean(ee));
  }
  const auto rel = [](double a, double b) { return std::abs(b - a) / std::max(a, b); };
  const double head = rel(means[0], means[1]);
  const double tail = rel(means[means.size() - 2], means.back());
  std::ostringstream detail;
  detail << "mean EE by P_max (dBm):";
  for (std::size_t i = 0; i < means.size(); ++i) {
    detail << ' ' << p_max_dbm[i] << ':' << format("%.0f", means[i]);
  }
  detail << format("; first step %.1f%%, last step %.1f%%", 100 * head, 100 * tail);
  return {head > 0.05 && tail < 0.05, detail.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "deployment", deployment},
      {2, "covering soundness", covering},
      {3, "telescoping identity", telescoping},
      {4, "exchange stability", exchange_stability},
      {5, "swap-count scale", swap_scale},
      {6, "DABPA optimality", dabpa_optimality},
      {7, "capacity/access", capacity},
      {8, "variant dominance", dominance},
      {9, "quota/EE trend", quota_trend},
      {10, "JDSSA-2 small-instance optimality", small_optimum},
      {11, "JUDDSRA convergence", convergence},
      {12, "P_max saturation", saturation},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s %2d %-34s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
