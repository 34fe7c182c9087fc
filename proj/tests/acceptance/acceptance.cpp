// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pliable/baselines.hpp"
#include "pliable/cli.hpp"
#include "pliable/codec.hpp"
#include "pliable/errors.hpp"
#include "pliable/model.hpp"
#include "pliable/shuffle.hpp"
#include "pliable/solvers.hpp"
#include "pliable/stats.hpp"

using namespace pliable;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int id, const std::string& name, bool pass, const std::string& detail, double seconds, double limit) {
  const bool in_time = seconds <= limit;
  if (!pass || !in_time) ++failures;
  std::printf("%s  %2d  %-34s %s [%.1fs / %.0fs]\n", pass && in_time ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str(), seconds, limit);
  std::fflush(stdout);
}

void info(const std::string& text) {
  std::printf("INFO      %s\n", text.c_str());
  std::fflush(stdout);
}

std::string str(double x, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

bool verifies(const solvers::SolverResult& r, const PicInstance& inst) {
  return codec::verify_scheme(r.scheme, inst).ok();
}

// 1 -------------------------------------------------------------------------

void criterion1() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (std::size_t n : {4, 8, 16}) {
    const auto inst = two_block_instance(n);
    const auto rt = solvers::rand_trans(inst, 1);
    const auto sf = solvers::star_forest_partition(inst);
    // Uncoded delivery: with c = 1 every client needs its own message.
    const auto uncoded = solvers::two_step_scheme(inst, 1);
    const bool here = rt.L() == 2 && sf.L() == 2 && verifies(rt, inst) && verifies(sf, inst) && uncoded.step1 == n &&
                      uncoded.L() == n;
    ok = ok && here;
    detail += "n=" + std::to_string(n) + ":" + std::to_string(rt.L()) + "/" + std::to_string(sf.L()) + "/" +
              std::to_string(uncoded.L()) + " ";
  }
  report(1, "two transmissions, two-block", ok, "rand_trans/star_forest/uncoded " + detail, t.seconds(), 1);
}

// 2 -------------------------------------------------------------------------

struct SandwichTally {
  std::size_t instances = 0, infeasible = 0, over_budget = 0, violations = 0, l1_mismatch = 0;
  std::string first_violation;
};

void sandwich(const PicInstance& inst, std::uint64_t seed, SandwichTally& tally) {
  ++tally.instances;
  auto fail = [&](const std::string& why) {
    if (tally.violations++ == 0) tally.first_violation = why + " on " + to_json(inst).dump();
  };
  std::optional<solvers::SolverResult> opt;
  std::vector<std::size_t> heur;
  bool infeasible = false;
  try {
    heur.push_back(solvers::star_forest_partition(inst).L());
    heur.push_back(solvers::rand_trans(inst, seed).L());
    heur.push_back(solvers::two_step_scheme(inst, seed).L());
  } catch (const Infeasible&) {
    infeasible = true;
  }
  const std::size_t cap = heur.empty() ? std::min(inst.m(), inst.n()) : *std::min_element(heur.begin(), heur.end());
  try {
    opt = solvers::brute_force_optimal(inst, cap);
  } catch (const BudgetExceeded&) {
    ++tally.over_budget;
    return;
  }
  if (infeasible) {
    ++tally.infeasible;
    if (opt) fail("brute found a scheme where heuristics report infeasible");
    if (!heur.empty()) fail("some heuristic succeeded on an infeasible instance");
    return;
  }
  if (!opt) {
    fail("brute found nothing within the best heuristic length");
    return;
  }
  if (!verifies(*opt, inst)) fail("brute scheme fails verification");
  const auto lower = solvers::chain_lower_bound(inst).value;
  if (lower > opt->L()) fail("chain bound exceeds optimum");
  for (auto h : heur) {
    if (opt->L() > h) fail("optimum exceeds a heuristic");
  }
  if (inst.c() == 1) {
    const bool one = solvers::decide_L1(inst).has_value();
    if (one != (opt->L() == 1)) {
      ++tally.l1_mismatch;
      fail("decide_L1 disagrees with brute force");
    }
  }
}

void criterion2() {
  Timer t;
  SandwichTally exhaustive, random;
  for (std::size_t m = 1; m <= 4; ++m) {
    const std::size_t sets = (std::size_t{1} << m) - 1;  // non-empty request sets
    for (std::size_t n = 1; n <= 4; ++n) {
      std::size_t total = 1;
      for (std::size_t i = 0; i < n; ++i) total *= sets;
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<MessageSet> req(n);
        std::size_t x = code;
        for (std::size_t i = 0; i < n; ++i, x /= sets) {
          const std::size_t mask = x % sets + 1;
          for (std::size_t j = 0; j < m; ++j) {
            if (mask >> j & 1) req[i].push_back(j);
          }
        }
        for (std::size_t c : {1, 2}) sandwich(PicInstance(m, req, c), code, exhaustive);
      }
    }
  }
  Rng rng(2024);
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = 1 + rng.below(10), n = 1 + rng.below(10);
    const double p = std::vector<double>{0.3, 0.5, 0.7}[rng.below(3)];
    const std::size_t c = 1 + rng.below(2);
    const auto gen = random_instance(m, n, p, c, rng.next());
    sandwich(gen.instance, static_cast<std::uint64_t>(k), random);
  }
  const bool ok = exhaustive.violations == 0 && random.violations == 0 && exhaustive.over_budget == 0;
  std::string detail = "exhaustive " + std::to_string(exhaustive.instances) + " (" +
                       std::to_string(exhaustive.infeasible) + " infeasible), random " +
                       std::to_string(random.instances) + " (" + std::to_string(random.over_budget) +
                       " over node budget, " + std::to_string(random.infeasible) + " infeasible), violations " +
                       std::to_string(exhaustive.violations + random.violations);
  if (!exhaustive.first_violation.empty()) detail += "; " + exhaustive.first_violation;
  if (!random.first_violation.empty()) detail += "; " + random.first_violation;
  report(2, "chain <= optimum <= heuristics", ok, detail, t.seconds(), 300);
}

// 3 -------------------------------------------------------------------------

// E[number of k-patterns] by summing over every bipartite graph with its
// probability; a (message set, client set) pair counts when the induced
// subgraph is a star forest with message degrees exactly c.
double pattern_expectation_oracle(std::size_t m, std::size_t n, double p, std::size_t c, std::size_t k) {
  const std::size_t edges = m * n;
  std::vector<std::size_t> msets, csets;
  for (std::size_t s = 0; s < (std::size_t{1} << m); ++s) {
    if (static_cast<std::size_t>(__builtin_popcountll(s)) == k) msets.push_back(s);
  }
  for (std::size_t s = 0; s < (std::size_t{1} << n); ++s) {
    if (static_cast<std::size_t>(__builtin_popcountll(s)) == k * c) csets.push_back(s);
  }
  double total = 0.0;
  for (std::size_t g = 0; g < (std::size_t{1} << edges); ++g) {
    const int e = __builtin_popcountll(g);
    const double weight = std::pow(p, e) * std::pow(1 - p, static_cast<double>(edges) - e);
    auto edge = [&](std::size_t j, std::size_t i) { return (g >> (j * n + i)) & 1U; };
    std::size_t count = 0;
    for (auto ms : msets) {
      for (auto cs : csets) {
        bool good = true;
        for (std::size_t i = 0; i < n && good; ++i) {
          if (!(cs >> i & 1)) continue;
          std::size_t deg = 0;
          for (std::size_t j = 0; j < m; ++j) deg += (ms >> j & 1) && edge(j, i);
          good = deg == 1;
        }
        for (std::size_t j = 0; j < m && good; ++j) {
          if (!(ms >> j & 1)) continue;
          std::size_t deg = 0;
          for (std::size_t i = 0; i < n; ++i) deg += (cs >> i & 1) && edge(j, i);
          good = deg == c;
        }
        count += good;
      }
    }
    total += weight * static_cast<double>(count);
  }
  return total;
}

void criterion3() {
  Timer t;
  std::size_t cells = 0, bad = 0;
  double worst = 0;
  for (std::size_t m = 1; m <= 12; ++m) {
    for (std::size_t n = 1; m * n <= 12; ++n) {
      for (std::size_t c : {1, 2}) {
        for (std::size_t k = 1; k <= 3; ++k) {
          if (k > m || k * c > n) continue;
          for (double p : {0.3, 0.5, 0.7}) {
            const double oracle = std::log(pattern_expectation_oracle(m, n, p, c, k));
            const double got = solvers::expected_patterns(m, n, p, c, k);
            const double err = std::abs(got - oracle) / std::max(1.0, std::abs(oracle));
            worst = std::max(worst, err);
            ++cells;
            bad += err > 1e-9;
          }
        }
      }
    }
  }
  report(3, "expected k-pattern count exact", bad == 0 && cells > 0,
         std::to_string(cells) + " cells, worst relative log error " + str(worst, 3), t.seconds(), 60);
}

// 4 -------------------------------------------------------------------------

void criterion4() {
  Timer t;
  std::size_t cells = 0, outside = 0, strict = 0, alt_outside = 0;
  std::string first;
  for (std::size_t e = 6; e <= 14; ++e) {
    const std::size_t n = std::size_t{1} << e;
    for (double p : {0.3, 0.5, 0.7}) {
      for (std::size_t c : {1, 2, 4}) {
        const auto b = solvers::k0_bracket(n, n, p, c);
        ++cells;
        strict += b.in_strict_bracket;
        const bool alt = std::floor(b.x1_alt_sign) - 1 <= static_cast<double>(b.k0) &&
                             static_cast<double>(b.k0) <= std::ceil(b.x2_alt_sign);
        alt_outside += !alt;
        if (!b.in_bracket) {
          if (outside++ == 0) {
            first = " first miss n=" + std::to_string(n) + " p=" + str(p) + " c=" + std::to_string(c) +
                    " k0=" + std::to_string(b.k0) + " x1=" + str(b.x1) + " x2=" + str(b.x2);
          }
        }
      }
    }
  }
  report(4, "k0 within closed-form bracket", outside == 0,
         std::to_string(cells - outside) + "/" + std::to_string(cells) + " in [floor(x1)-1, ceil(x2)]" + first,
         t.seconds(), 60);
  info("criterion 4: " + std::to_string(strict) + "/" + std::to_string(cells) +
       " inside the tighter [floor(x1), ceil(x2)-1]; with the opposite sign on the log-log term, " +
       std::to_string(alt_outside) + " cells fall outside");
}

// 5 -------------------------------------------------------------------------

void criterion5() {
  Timer t;
  const std::size_t n = 512, seeds = 20;
  bool ok = true;
  std::vector<double> means;
  std::string detail = "rand_trans means";
  for (std::size_t c : {1, 2, 4, 8}) {
    double total = 0;
    for (std::size_t s = 0; s < seeds; ++s) {
      const auto inst = random_instance(n, n, 0.5, c, 1000 + s).instance;
      const auto r = solvers::rand_trans(inst, s);
      ok = ok && verifies(r, inst) && r.L() <= n;
      total += static_cast<double>(r.L());
    }
    means.push_back(total / seeds);
    detail += " c" + std::to_string(c) + "=" + str(means.back());
  }
  for (std::size_t i = 1; i < means.size(); ++i) ok = ok && means[i] <= means[i - 1];
  detail += "; two_step max";
  for (std::size_t c : {32, 64}) {
    const double limit = static_cast<double>(n) / static_cast<double>(c) + 8 * std::log2(static_cast<double>(c));
    std::size_t worst = 0;
    for (std::size_t s = 0; s < seeds; ++s) {
      const auto inst = random_instance(n, n, 0.5, c, 2000 + s).instance;
      const auto r = solvers::two_step_scheme(inst, s);
      ok = ok && verifies(r, inst) && static_cast<double>(r.L()) <= limit;
      worst = std::max(worst, r.L());
    }
    detail += " c" + std::to_string(c) + "=" + std::to_string(worst) + "<=" + str(limit);
  }
  report(5, "RandTrans trend in c at n=512", ok, detail, t.seconds(), 600);
}

// 6 -------------------------------------------------------------------------

void criterion6() {
  Timer t;
  std::size_t built = 0, failed = 0;
  std::string first;
  const std::vector<std::size_t> primes{2, 3, 5};
  // Sequences of primes with every choice of repetitions, n = prod(k_j i_j) <= 225.
  std::function<void(std::size_t, std::vector<std::size_t>&, std::vector<std::size_t>&, std::size_t)> walk =
      [&](std::size_t d1, std::vector<std::size_t>& ks, std::vector<std::size_t>& is, std::size_t n) {
        if (!ks.empty()) {
          try {
            const auto B = shuffle::build_outer_recursive(d1, ks, is);
            std::size_t d2 = 1;
            for (auto i : is) d2 *= i;
            const bool good = shuffle::verify_outer(B, d1, d2).ok() && B.n() == n;
            ++built;
            if (!good && failed++ == 0) first = " first failure d1=" + std::to_string(d1);
          } catch (const Error& e) {
            if (failed++ == 0) first = std::string(" first failure: ") + e.what();
          }
        }
        for (auto k : primes) {
          if (k < d1) continue;  // the construction needs d1 <= every block size
          for (std::size_t i = 1; i <= k; ++i) {
            if (n * k * i > 225) break;
            ks.push_back(k);
            is.push_back(i);
            walk(d1, ks, is, n * k * i);
            ks.pop_back();
            is.pop_back();
          }
        }
      };
  for (std::size_t d1 : {2, 3}) {
    std::vector<std::size_t> ks, is;
    walk(d1, ks, is, 1);
  }
  const auto small = shuffle::build_outer_recursive(2, {2}, {2});
  auto rows = small.rows();
  std::vector<std::vector<std::uint8_t>> expect{{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}};
  std::sort(rows.begin(), rows.end());
  std::sort(expect.begin(), expect.end());
  const bool small_ok = rows == expect;
  report(6, "recursive outer layer C4-free", failed == 0 && small_ok && built > 0,
         std::to_string(built) + " constructions verified, " + std::to_string(failed) + " failed; 4x4 example " +
             (small_ok ? "matches" : "differs") + first,
         t.seconds(), 10);
}

// 7 -------------------------------------------------------------------------

void criterion7() {
  Timer t;
  const std::size_t trials = 100000;
  bool ok = true;
  std::string detail;
  double est42 = 0;
  for (auto [m1, r] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 2}, {6, 2}, {6, 3}, {12, 3}, {12, 4}}) {
    const double est = shuffle::decode_probability_estimate(m1, r, trials, 77 + m1 * 10 + r);
    ok = ok && est >= 1 / M_E - 0.02;
    if (m1 == 4) est42 = est;
    detail += "(" + std::to_string(m1) + "," + std::to_string(r) + ")=" + str(est) + " ";
  }
  const double p = 2.0 / 3.0, sigma = std::sqrt(p * (1 - p) / trials);
  const bool near = std::abs(est42 - p) <= 3 * sigma;
  report(7, "decode probability >= 1/e", ok && near, detail + "| (4,2) vs 2/3 within 3 sigma: " + (near ? "yes" : "no"),
         t.seconds(), 30);
}

// 8, 9 ----------------------------------------------------------------------

shuffle::ShuffleConfig small_config(std::size_t T) {
  shuffle::ShuffleConfig cfg;
  cfg.m = 16;
  cfg.n = 6;
  cfg.s = 4;
  cfg.m1 = 4;
  cfg.r = 2;
  cfg.T = T;
  cfg.seed = 3;
  cfg.outer = "random";
  return cfg;
}

void criterion8() {
  Timer t;
  const auto cfg = small_config(50);
  const auto outer = shuffle::make_outer(cfg, cfg.seed);
  const bool strict = shuffle::verify_outer(outer, cfg.d1(), cfg.d2()).ok();
  const double target = 0.9 * 2.94;
  const std::size_t floor_distance = 2 * (cfg.s - cfg.m1 + cfg.m1 / cfg.r);
  stats::Running ham;
  bool tx_ok = true, dist_ok = true;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto run = shuffle::run_shuffle(cfg, outer, seed);
    for (const auto& it : run.iterations) tx_ok = tx_ok && it.transmissions == cfg.G();
    dist_ok = dist_ok && run.min_cross_distance >= floor_distance;
    ham.add(run.hamming.value());
  }
  const bool ok = strict && tx_ok && dist_ok && ham.mean() >= target;
  report(8, "two-layer shuffle, n=6 G=4", ok,
         std::string("C4-free ") + (strict ? "yes" : "no") + ", G tx/iter " + (tx_ok ? "yes" : "no") +
             ", mean H " + str(ham.mean()) + " >= " + str(target) + ", same-iteration distance >= " +
             std::to_string(floor_distance) + " " + (dist_ok ? "yes" : "no"),
         t.seconds(), 120);
  const double bound = std::min(2.0 * cfg.s / (M_E * cfg.per_group()), 2.0 * (cfg.s - cfg.m1 + cfg.m1 / cfg.r));
  info("criterion 8: min{2s/(e m1(1-1/r)), 2(s-m1+m1/r)} evaluates to " + str(bound) +
       " at this config; the asserted 0.9 * 2.94 target is the stricter one");
}

void criterion9() {
  Timer t;
  const auto cfg = small_config(50);
  const auto outer = shuffle::make_outer(cfg, cfg.seed);
  std::vector<shuffle::ShuffleRun> runs;
  runs.reserve(1000);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) runs.push_back(shuffle::run_shuffle(cfg, outer, 50000 + seed));
  const auto rep = shuffle::randomness_check(runs, cfg, outer);
  std::size_t passed = 0, considered = 0;
  std::string detail;
  for (const auto& u : rep.uniformity) {
    if (u.t == 0) continue;
    ++considered;
    passed += u.pass;
    detail += "t=" + std::to_string(u.t) + " p=" + str(u.p_value, 3) + " ";
  }
  const bool ok = rep.states == 6 && considered == 3 && passed >= 2 && rep.reversible;
  report(9, "uniform reversible cache states", ok,
         std::to_string(passed) + "/3 uniform (" + detail + "), reversible " + (rep.reversible ? "yes" : "no"),
         t.seconds(), 120);
  std::string ind;
  for (const auto& r : rep.independence) {
    ind += "t=" + std::to_string(r.t) + " p=" + str(r.p_value, 3) + " corr=" + str(r.mean_bit_correlation, 2) + " ";
  }
  info("criterion 9: independence of two workers sharing a group: " + ind);
}

// 10, 11 --------------------------------------------------------------------

shuffle::ShuffleConfig large_config() {
  shuffle::ShuffleConfig cfg;
  cfg.m = 500;
  cfg.n = 20;
  cfg.s = 50;
  cfg.m1 = 10;
  cfg.r = 2;
  cfg.T = 8;
  cfg.seed = 11;
  cfg.outer = "random";
  return cfg;
}

void criterion10() {
  Timer t;
  const auto cfg = large_config();
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  std::ostringstream csv;
  const auto sum = cli::compare_experiment(cfg, seeds, &csv);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  bool exact = true;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string x;
    while (std::getline(ss, x, ',')) f.push_back(x);
    exact = exact && f.size() == 7 && f[2] == "50";
    ++rows;
  }
  exact = exact && rows == seeds.size() * cfg.T;
  const bool ok = exact && sum.pliable_over_uncoded >= 0.09 && sum.pliable_over_uncoded <= 0.15 &&
                  sum.index_over_uncoded >= 0.85 && sum.index_over_uncoded <= 0.95;
  report(10, "communication vs baselines", ok,
         "pliable/uncoded " + str(sum.pliable_over_uncoded) + " in [0.09,0.15], index/uncoded " +
             str(sum.index_over_uncoded) + " in [0.85,0.95], 50 tx every iteration " + (exact ? "yes" : "no"),
         t.seconds(), 300);
  info("criterion 10: " + std::to_string(sum.outer_violations) +
       " worker pairs share two or more groups in the random outer layer (C4-free is impossible at these parameters)");
}

void criterion11() {
  Timer t;
  const auto cfg = large_config();
  stats::Running ham;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto run =
        baselines::random_shuffle_baseline(cfg.m, cfg.n, cfg.s, cfg.T, baselines::Delivery::uncoded, seed);
    ham.add(run.hamming.value());
  }
  const double expect = 2.0 * cfg.s * (1.0 - static_cast<double>(cfg.s) / cfg.m);
  const double alt = expect / 2;
  const double tol = 3 * ham.sem();
  const bool near = std::abs(ham.mean() - expect) <= tol;
  const bool alt_rejected = std::abs(ham.mean() - alt) > tol;
  report(11, "random-shuffle Hamming = 2s(1-s/m)", near && alt_rejected,
         "mean " + str(ham.mean(), 6) + " vs " + str(expect) + " (3 sigma " + str(tol, 3) + "); s(1-s/m) = " +
             str(alt) + " rejected " + (alt_rejected ? "yes" : "no"),
         t.seconds(), 60);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int a = 1; a < argc; ++a) only.push_back(std::atoi(argv[a]));
  const std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
                                               criterion7, criterion8, criterion9, criterion10, criterion11};
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(k + 1)) == only.end()) continue;
    try {
      all[k]();
    } catch (const std::exception& e) {
      report(static_cast<int>(k + 1), "criterion raised", false, e.what(), 0, 1);
    }
  }
  std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
