#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "pliable/baselines.hpp"
#include "pliable/cli.hpp"
#include "pliable/errors.hpp"

namespace pliable::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text.front() == '-') throw std::invalid_argument("negative");
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ConfigError("--" + key + ": expected a non-negative integer, got '" + text + "'");
  return v;
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ConfigError("--" + key + ": expected a number, got '" + text + "'");
  return v;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

// Writes to --out when set, else to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }
  std::ostream* get() { return stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

const std::set<std::string> kKinds{"solve", "bounds", "patterns", "shuffle", "compare", "demo", "verify-outer"};
const std::set<std::string> kSolvers{"decide_l1", "brute", "star_forest", "rand_trans", "two_step", "chain_bound"};

shuffle::ShuffleConfig config_from_params(const ExperimentSpec& spec, shuffle::ShuffleConfig cfg) {
  if (spec.has("config")) cfg = shuffle::load_config(spec.get("config"));
  cfg.m = spec.get_size("m", cfg.m);
  cfg.n = spec.get_size("n", cfg.n);
  cfg.s = spec.get_size("s", cfg.s);
  cfg.m1 = spec.get_size("m1", cfg.m1);
  cfg.r = spec.get_size("r", cfg.r);
  cfg.T = spec.get_size("T", cfg.T);
  cfg.outer = spec.get("outer", cfg.outer);
  if (spec.has("config_seed")) cfg.seed = spec.get_size("config_seed", 0);
  return cfg;
}

shuffle::ShuffleConfig large_defaults() {
  shuffle::ShuffleConfig cfg;
  cfg.m = 500;
  cfg.n = 20;
  cfg.s = 50;
  cfg.m1 = 10;
  cfg.r = 2;
  cfg.T = 8;
  cfg.outer = "random";
  return cfg;
}

PicInstance instance_from_params(const ExperimentSpec& spec) {
  PicInstance inst = spec.has("instance") ? load_instance(spec.get("instance")) : two_block_instance(spec.get_size("two_block", 4));
  if (spec.has("c")) inst = inst.with_c(spec.get_size("c", 1));
  return inst;
}

nlohmann::json report_json(const shuffle::OuterReport& rep) {
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [a, b] : rep.violating_pairs) pairs.push_back({a + 1, b + 1});
  return {{"ok", rep.ok()},
          {"rows_regular", rep.rows_regular},
          {"cols_regular", rep.cols_regular},
          {"c4_free", rep.c4_free},
          {"row_degree", {rep.min_row, rep.max_row}},
          {"col_degree", {rep.min_col, rep.max_col}},
          {"violating_pairs", pairs},
          {"excess_overlap", rep.excess_overlap},
          {"column_histogram", rep.column_histogram}};
}

// solve, bounds, ... return an exit code and write through the sinks.

int run_solve(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  const auto inst = instance_from_params(spec);
  const auto seed = spec.seeds.front();
  const auto outcome = solve(inst, spec.get("solver"), seed, spec.get_size("Lmax", 3),
                             static_cast<std::uint32_t>(spec.get_size("q", 2)));
  out << outcome.line << '\n';
  if (!spec.out.empty()) {
    Sink sink(spec.out, out);
    *sink << outcome.json.dump(2) << '\n';
  } else {
    out << outcome.json.dump(2) << '\n';
  }
  if (outcome.result) {
    const auto rep = solvers::bound_report(inst, *outcome.result);
    err << "verified: all " << inst.n() << " clients satisfied; chain lower bound " << rep.lower << '\n';
  }
  return kOk;
}

int run_bounds(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  BoundsGrid grid;
  grid.n = spec.get_sizes("n", {});
  grid.m = spec.get_sizes("m", {});
  grid.p = spec.get_doubles("p", {0.5});
  grid.c = spec.get_sizes("c", {1});
  grid.seeds = spec.seeds;
  Sink sink(spec.out, out);
  const auto rows = bounds_experiment(grid, sink.get());
  std::size_t outside = 0;
  std::size_t skipped = 0;
  for (const auto& r : rows) {
    outside += !r.bracket.in_bracket;
    skipped += r.infeasible;
  }
  err << rows.size() << " grid points, " << outside << " with k0 outside the bracket, " << skipped
      << " infeasible draws skipped\n";
  return kOk;
}

int run_patterns(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  Sink sink(spec.out, out);
  if (spec.has("instance") || spec.has("two_block")) {
    const auto inst = instance_from_params(spec);
    const BipartiteView view(inst);
    std::vector<std::size_t> clients(inst.n());
    for (std::size_t i = 0; i < inst.n(); ++i) clients[i] = i;
    MessageSet messages(inst.m());
    for (std::size_t j = 0; j < inst.m(); ++j) messages[j] = j;
    const std::size_t budget = spec.get_size("budget", solvers::kDefaultPatternBudget);
    std::size_t hi = std::min(inst.m(), inst.n() / inst.c());
    std::size_t lo = 1;
    if (spec.has("k")) hi = lo = spec.get_size("k", 1);
    nlohmann::json j = {{"k", 0}, {"messages", nlohmann::json::array()}, {"leaves", nlohmann::json::array()}};
    std::uint64_t nodes = 0;
    bool exhausted = false;
    for (std::size_t k = hi; k >= lo && k >= 1; --k) {
      const auto res = solvers::find_k_pattern(view, k, inst.c(), clients, messages, budget);
      nodes += res.nodes;
      exhausted = exhausted || res.budget_exhausted;
      if (res.pattern) {
        j["k"] = k;
        for (std::size_t s = 0; s < res.pattern->k(); ++s) {
          j["messages"].push_back(res.pattern->messages[s] + 1);
          nlohmann::json leaves = nlohmann::json::array();
          for (auto i : res.pattern->leaves[s]) leaves.push_back(i + 1);
          j["leaves"].push_back(std::move(leaves));
        }
        break;
      }
    }
    j["nodes"] = nodes;
    j["budget_exhausted"] = exhausted;
    *sink << j.dump(2) << '\n';
    err << "largest pattern found: k = " << j["k"].get<std::size_t>() << '\n';
    return kOk;
  }
  const auto ns = spec.get_sizes("n", {});
  const auto ms = spec.get_sizes("m", {});
  const auto ps = spec.get_doubles("p", {0.5});
  const auto cs = spec.get_sizes("c", {1});
  *sink << "m,n,p,c,k,log_expected,expected\n";
  for (std::size_t a = 0; a < ns.size(); ++a) {
    const std::size_t n = ns[a], m = ms.empty() ? n : ms.at(std::min(a, ms.size() - 1));
    for (double p : ps) {
      for (auto c : cs) {
        for (std::size_t k = 1; k <= m && k * c <= n; ++k) {
          const double le = solvers::expected_patterns(m, n, p, c, k);
          *sink << m << ',' << n << ',' << fmt(p) << ',' << c << ',' << k << ',' << fmt(le) << ',' << fmt(std::exp(le))
                << '\n';
        }
      }
    }
  }
  return kOk;
}

int run_shuffle_cmd(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  const auto cfg = config_from_params(spec, {});
  Sink sink(spec.out, out);
  const auto sum = shuffle_experiment(cfg, spec.seeds, sink.get());
  err << "runs " << sum.runs << ", transmissions/iteration " << fmt(sum.mean_transmissions) << " (G = " << cfg.G()
      << "), mean avg_hamming " << fmt(sum.mean_avg_hamming) << ", mean decode rate " << fmt(sum.mean_decode_rate)
      << ", max c budget " << sum.max_c_budget << " (implied c " << sum.implied_c << ")\n";
  if (sum.outer.ok()) {
    err << "outer layer: C4-free biregular; min same-iteration distance " << sum.min_cross_distance << '\n';
  } else {
    err << "outer layer: " << sum.outer.violating_pairs.size()
        << " worker pairs share two or more groups; cross-worker distance guarantee does not hold (observed minimum "
        << sum.min_cross_distance << ")\n";
    err << report_json(sum.outer).dump() << '\n';
  }
  return kOk;
}

int run_compare(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  const auto cfg = config_from_params(spec, large_defaults());
  Sink sink(spec.out, out);
  const auto sum = compare_experiment(cfg, spec.seeds, sink.get());
  err << "pliable/uncoded " << fmt(sum.pliable_over_uncoded) << ", index_coded/uncoded " << fmt(sum.index_over_uncoded)
      << ", avg_hamming pliable " << fmt(sum.pliable_avg_hamming) << ", random " << fmt(sum.random_avg_hamming)
      << ", outer violations " << sum.outer_violations << '\n';
  return kOk;
}

int run_demo(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  DemoParams params;
  shuffle::ShuffleConfig base;
  base.m = 120;
  base.n = 6;
  base.s = 20;
  base.m1 = 4;
  base.r = 2;
  base.T = 10;
  base.outer = "random";
  params.cfg = config_from_params(spec, base);
  params.dim = spec.get_size("dim", params.dim);
  params.points_per_message = spec.get_size("points", params.points_per_message);
  params.learning_rate = spec.get_double("lr", params.learning_rate);
  if (spec.has("schemes")) params.schemes = split(spec.get("schemes"), ',');
  Sink sink(spec.out, out);
  const auto rows = demo_experiment(params, spec.seeds, sink.get());
  std::map<std::string, std::pair<double, std::size_t>> last;
  for (const auto& r : rows) {
    if (r.iter == params.cfg.T) {
      last[r.scheme].first += r.error_rate;
      ++last[r.scheme].second;
    }
  }
  for (const auto& [scheme, acc] : last) {
    err << scheme << ": mean final error " << fmt(acc.first / static_cast<double>(acc.second)) << '\n';
  }
  return kOk;
}

int run_verify_outer(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  shuffle::OuterLayer layer;
  std::size_t d1 = 0, d2 = 0;
  if (spec.has("matrix")) {
    std::ifstream in(spec.get("matrix"));
    if (!in) throw ConfigError("cannot open " + spec.get("matrix"));
    nlohmann::json j;
    try {
      in >> j;
      layer = shuffle::OuterLayer(j.at("rows").get<std::vector<std::vector<std::uint8_t>>>());
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("malformed matrix file: ") + e.what());
    }
  } else {
    const auto cfg = config_from_params(spec, {});
    layer = shuffle::make_outer(cfg, cfg.seed);
    d1 = cfg.d1();
    d2 = cfg.d2();
  }
  const auto rep = shuffle::verify_outer(layer, d1, d2);
  auto j = report_json(rep);
  j["n"] = layer.n();
  j["G"] = layer.G();
  Sink sink(spec.out, out);
  *sink << j.dump(2) << '\n';
  err << (rep.ok() ? "outer layer is C4-free and biregular\n" : "outer layer fails verification\n");
  return rep.ok() ? kOk : kVerification;
}

}  // namespace

std::string ExperimentSpec::get(const std::string& key, const std::string& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::size_t ExperimentSpec::get_size(const std::string& key, std::size_t fallback) const {
  return has(key) ? static_cast<std::size_t>(parse_u64(key, get(key))) : fallback;
}

double ExperimentSpec::get_double(const std::string& key, double fallback) const {
  return has(key) ? parse_double(key, get(key)) : fallback;
}

std::vector<std::size_t> ExperimentSpec::get_sizes(const std::string& key, std::vector<std::size_t> fallback) const {
  if (!has(key)) return fallback;
  std::vector<std::size_t> v;
  for (const auto& part : split(get(key), ',')) v.push_back(static_cast<std::size_t>(parse_u64(key, part)));
  return v;
}

std::vector<double> ExperimentSpec::get_doubles(const std::string& key, std::vector<double> fallback) const {
  if (!has(key)) return fallback;
  std::vector<double> v;
  for (const auto& part : split(get(key), ',')) v.push_back(parse_double(key, part));
  return v;
}

void ExperimentSpec::validate() const {
  if (!kKinds.count(kind)) throw ConfigError("unknown subcommand '" + kind + "'");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  auto require = [&](const std::string& key) {
    if (!has(key)) throw ConfigError(kind + " requires --" + key);
  };
  if (kind == "solve") {
    require("solver");
    if (!kSolvers.count(get("solver"))) throw ConfigError("unknown solver '" + get("solver") + "'");
    if (!has("instance") && !has("two_block")) throw ConfigError("solve requires --instance or --two-block");
  } else if (kind == "bounds") {
    require("n");
  } else if (kind == "patterns") {
    if (!has("instance") && !has("two_block")) require("n");
  } else if (kind == "shuffle") {
    require("config");
  } else if (kind == "verify-outer") {
    if (!has("config") && !has("matrix")) throw ConfigError("verify-outer requires --config or --matrix");
  }
  // Typed parameters must parse.
  for (const auto* key : {"Lmax", "q", "c", "two_block", "k", "budget", "m", "n", "s", "m1", "r", "T", "dim", "points"}) {
    if (has(key)) get_sizes(key, {});
  }
  for (const auto* key : {"p", "lr"}) {
    if (has(key)) get_doubles(key, {});
  }
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& part : split(text, ',')) {
    const auto dash = part.find('-', 1);
    if (dash == std::string::npos) {
      seeds.push_back(parse_u64("seeds", part));
      continue;
    }
    const auto lo = parse_u64("seeds", part.substr(0, dash)), hi = parse_u64("seeds", part.substr(dash + 1));
    if (hi < lo) throw ConfigError("--seeds: empty range '" + part + "'");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw ConfigError("--seeds: no seeds given");
  return seeds;
}

SolveOutcome solve(const PicInstance& inst, const std::string& solver, std::uint64_t seed, std::size_t L_max,
                   std::uint32_t q) {
  SolveOutcome o;
  o.solver = solver;
  if (solver == "chain_bound") {
    o.bound = solvers::chain_lower_bound(inst);
    nlohmann::json chain = nlohmann::json::array();
    for (auto i : o.bound->witness) chain.push_back(i + 1);
    o.json = {{"solver", solver}, {"lower_bound", o.bound->value}, {"chain_length", o.bound->length}, {"chain", chain}};
    o.line = "lower bound = " + std::to_string(o.bound->value);
    return o;
  }
  if (solver == "decide_l1") {
    if (auto scheme = solvers::decide_L1(inst)) {
      auto v = codec::verify_scheme(*scheme, inst);
      if (!v.ok()) throw VerificationFailure("decide_l1 returned a scheme that fails verification");
      o.result = solvers::SolverResult{solver, std::move(*scheme), std::move(*v.assignment), seed};
    }
  } else if (solver == "brute") {
    o.result = solvers::brute_force_optimal(inst, L_max, q);
  } else if (solver == "star_forest") {
    o.result = solvers::star_forest_partition(inst);
  } else if (solver == "rand_trans") {
    o.result = solvers::rand_trans(inst, seed);
  } else if (solver == "two_step") {
    o.result = solvers::two_step_scheme(inst, seed);
  } else {
    throw ConfigError("unknown solver '" + solver + "'");
  }
  if (!o.result) {
    const std::size_t limit = solver == "decide_l1" ? 1 : L_max;
    o.json = {{"solver", solver}, {"L", nullptr}, {"L_max", limit}};
    o.line = "L > " + std::to_string(limit);
    return o;
  }
  // Independent re-check of whatever the solver claims.
  const auto v = codec::verify_scheme(o.result->scheme, inst);
  if (!v.ok()) throw VerificationFailure(solver + " produced a scheme that fails verification");
  o.json = solvers::to_json(*o.result);
  o.json["verified"] = true;
  o.line = "L = " + std::to_string(o.result->L());
  return o;
}

std::vector<BoundsRow> bounds_experiment(const BoundsGrid& grid, std::ostream* csv) {
  if (grid.n.empty()) throw ConfigError("bounds grid needs at least one n");
  if (grid.seeds.empty()) throw ConfigError("bounds grid needs at least one seed");
  std::vector<BoundsRow> rows;
  if (csv) *csv << kBoundsHeader << '\n';
  for (std::size_t a = 0; a < grid.n.size(); ++a) {
    const std::size_t n = grid.n[a];
    const std::size_t m = grid.m.empty() ? n : grid.m.at(std::min(a, grid.m.size() - 1));
    for (double p : grid.p) {
      for (auto c : grid.c) {
        BoundsRow row{m, n, c, p, solvers::k0_bracket(m, n, p, c), 0.0, 0.0, 0};
        double total = 0;
        std::size_t solved = 0;
        for (auto seed : grid.seeds) {
          const auto gen = random_instance(m, n, p, c, seed);
          try {
            total += static_cast<double>(solvers::rand_trans(gen.instance, seed).L());
            ++solved;
          } catch (const Infeasible&) {
            ++row.infeasible;  // tiny instances can violate the c-constraint outright
          }
        }
        row.rand_trans_mean = solved == 0 ? std::nan("") : total / static_cast<double>(solved);
        row.reference = n >= 2 ? static_cast<double>(n) / (static_cast<double>(c) * std::log(static_cast<double>(n)))
                               : static_cast<double>(n);
        if (csv) {
          *csv << m << ',' << n << ',' << fmt(p) << ',' << c << ',' << row.bracket.k0 << ',' << fmt(row.bracket.x1)
               << ',' << fmt(row.bracket.x2) << ',' << (row.bracket.in_bracket ? 1 : 0) << ','
               << fmt(row.rand_trans_mean) << ',' << fmt(row.reference) << '\n';
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

ShuffleSummary shuffle_experiment(const shuffle::ShuffleConfig& cfg, const std::vector<std::uint64_t>& seeds,
                                  std::ostream* csv) {
  cfg.validate();
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  const auto outer = shuffle::make_outer(cfg, cfg.seed);
  ShuffleSummary sum;
  sum.outer = shuffle::verify_outer(outer, cfg.d1(), cfg.d2());
  sum.min_cross_distance = cfg.m + 1;
  if (csv) *csv << kMetricsHeader << '\n';
  double tx = 0, rate = 0, ham = 0;
  std::size_t iters = 0;
  for (std::size_t r = 0; r < seeds.size(); ++r) {
    const auto run = shuffle::run_shuffle(cfg, outer, seeds[r]);
    for (const auto& it : run.iterations) {
      if (csv) {
        *csv << r + 1 << ',' << it.iter << ',' << it.transmissions << ',' << it.decodes << ','
             << fmt(it.avg_hamming_running) << ',' << it.c_budget_max << '\n';
      }
      tx += static_cast<double>(it.transmissions);
      ++iters;
      sum.max_c_budget = std::max(sum.max_c_budget, it.c_budget_max);
    }
    double group_rate = 0;
    for (auto g : run.group_decode_rate) group_rate += g;
    rate += run.group_decode_rate.empty() ? 0.0 : group_rate / static_cast<double>(run.group_decode_rate.size());
    ham += run.hamming.value();
    sum.implied_c = run.implied_c;
    sum.min_cross_distance = std::min(sum.min_cross_distance, run.min_cross_distance);
  }
  sum.runs = seeds.size();
  sum.mean_transmissions = iters == 0 ? 0.0 : tx / static_cast<double>(iters);
  sum.mean_decode_rate = rate / static_cast<double>(seeds.size());
  sum.mean_avg_hamming = ham / static_cast<double>(seeds.size());
  return sum;
}

CompareSummary compare_experiment(const shuffle::ShuffleConfig& cfg, const std::vector<std::uint64_t>& seeds,
                                  std::ostream* csv) {
  cfg.validate();
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  const auto outer = shuffle::make_outer(cfg, cfg.seed);
  CompareSummary sum;
  sum.outer_violations = shuffle::verify_outer(outer).violating_pairs.size();
  if (csv) *csv << kCompareHeader << '\n';
  double ham_p = 0, ham_r = 0;
  for (std::size_t r = 0; r < seeds.size(); ++r) {
    const auto pl = shuffle::run_shuffle(cfg, outer, seeds[r]);
    const auto un = baselines::random_shuffle_baseline(cfg.m, cfg.n, cfg.s, cfg.T, baselines::Delivery::uncoded, seeds[r]);
    const auto ic =
        baselines::random_shuffle_baseline(cfg.m, cfg.n, cfg.s, cfg.T, baselines::Delivery::index_coded, seeds[r]);
    for (std::size_t t = 0; t < cfg.T; ++t) {
      const std::size_t p = pl.iterations[t].transmissions, u = un.transmissions[t], x = ic.transmissions[t];
      sum.pliable_tx += p;
      sum.uncoded_tx += u;
      sum.index_coded_tx += x;
      if (csv) {
        const double ud = static_cast<double>(u);
        *csv << r + 1 << ',' << t + 1 << ',' << p << ',' << u << ',' << x << ','
             << (u == 0 ? std::string("nan") : fmt(static_cast<double>(p) / ud)) << ','
             << (u == 0 ? std::string("nan") : fmt(static_cast<double>(x) / ud)) << '\n';
      }
    }
    ham_p += pl.hamming.value();
    ham_r += un.hamming.value();
  }
  const double u = static_cast<double>(sum.uncoded_tx);
  sum.pliable_over_uncoded = u == 0 ? 0.0 : static_cast<double>(sum.pliable_tx) / u;
  sum.index_over_uncoded = u == 0 ? 0.0 : static_cast<double>(sum.index_coded_tx) / u;
  sum.pliable_avg_hamming = ham_p / static_cast<double>(seeds.size());
  sum.random_avg_hamming = ham_r / static_cast<double>(seeds.size());
  return sum;
}

int run(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    spec.validate();
  } catch (const Error& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  }
  try {
    if (spec.kind == "solve") return run_solve(spec, out, err);
    if (spec.kind == "bounds") return run_bounds(spec, out, err);
    if (spec.kind == "patterns") return run_patterns(spec, out, err);
    if (spec.kind == "shuffle") return run_shuffle_cmd(spec, out, err);
    if (spec.kind == "compare") return run_compare(spec, out, err);
    if (spec.kind == "demo") return run_demo(spec, out, err);
    return run_verify_outer(spec, out, err);
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << '\n';
    return kVerification;
  } catch (const ConfigError& e) {
    err << "infeasible configuration: " << e.what() << '\n';
    return kInfeasible;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace pliable::cli
