#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pliable/cli.hpp"
#include "pliable/errors.hpp"

using namespace pliable;
using namespace pliable::cli;

namespace {

const std::string kData = PLIABLE_TEST_DATA;

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

struct Ran {
  int code;
  std::string out, err;
};

Ran run_spec(const ExperimentSpec& spec) {
  std::ostringstream out, err;
  const int code = run(spec, out, err);
  return {code, out.str(), err.str()};
}

ExperimentSpec make(const std::string& kind, std::map<std::string, std::string> params,
                    std::vector<std::uint64_t> seeds = {0}) {
  ExperimentSpec s;
  s.kind = kind;
  s.params = std::move(params);
  s.seeds = std::move(seeds);
  return s;
}

shuffle::ShuffleConfig small() { return shuffle::load_config(kData + "/small.json"); }

}  // namespace

TEST_CASE("parse_seeds") {
  CHECK(parse_seeds("1,2,5") == std::vector<std::uint64_t>{1, 2, 5});
  CHECK(parse_seeds("3-6") == std::vector<std::uint64_t>{3, 4, 5, 6});
  CHECK(parse_seeds("7") == std::vector<std::uint64_t>{7});
  CHECK_THROWS(parse_seeds("x"));
  CHECK_THROWS(parse_seeds("5-3"));
}

TEST_CASE("solve lines") {
  CHECK(solve(two_block_instance(8), "rand_trans", 1).line == "L = 2");
  CHECK(solve(two_block_instance(4), "brute", 1).line == "L = 2");
  CHECK(solve(PicInstance(2, {{0}, {1}}, 1), "decide_l1", 0).line == "L = 1");
  const auto nested = load_instance(kData + "/nested.json");
  const auto lb = solve(nested, "chain_bound", 0);
  CHECK(lb.line == "lower bound = 3");
  CHECK(lb.json["lower_bound"] == 3);
  const auto o = solve(two_block_instance(4), "star_forest", 0);
  CHECK(o.json["verified"] == true);
  CHECK(o.json["L"] == 2);
}

TEST_CASE("run exit codes") {
  CHECK(run_spec(make("solve", {{"solver", "rand_trans"}, {"two_block", "4"}})).code == kOk);
  CHECK(run_spec(make("solve", {{"two_block", "4"}})).code == kUsage);
  CHECK(run_spec(make("nonsense", {})).code == kUsage);
  CHECK(run_spec(make("solve", {{"solver", "rand_trans"}, {"two_block", "4"}}, {})).code == kUsage);
  CHECK(run_spec(make("bounds", {{"n", "x"}})).code == kUsage);

  const auto bad = run_spec(make("shuffle", {{"config", kData + "/bad_r.json"}}));
  CHECK(bad.code == kInfeasible);
  CHECK(bad.err.find("r divides m1") != std::string::npos);

  const auto path = (std::filesystem::temp_directory_path() / "pliable_bad_outer.json").string();
  std::ofstream(path) << R"({"rows": [[1,1],[1,1]]})";
  CHECK(run_spec(make("verify-outer", {{"matrix", path}})).code == kVerification);
  std::ofstream(path) << R"({"rows": [[1,0],[0,1]]})";
  CHECK(run_spec(make("verify-outer", {{"matrix", path}})).code == kOk);
  std::filesystem::remove(path);
}

TEST_CASE("CSV headers are stable") {
  CHECK(std::string(kBoundsHeader) == "m,n,p,c,k0,x1,x2,in_bracket,rand_trans_mean,reference");
  CHECK(std::string(kMetricsHeader) == "run,iter,transmissions,decodes,avg_hamming_running,c_budget_max");
  CHECK(std::string(kCompareHeader) ==
        "run,iter,pliable_tx,uncoded_tx,index_coded_tx,pliable_over_uncoded,index_over_uncoded");
  CHECK(std::string(kDemoHeader) == "seed,iter,scheme,error_rate,transmissions");

  const auto b = run_spec(make("bounds", {{"n", "2"}, {"m", "2"}, {"p", "0.5"}, {"c", "1"}}, {1, 2}));
  CHECK(b.code == kOk);
  CHECK(first_line(b.out) == kBoundsHeader);
  CHECK(std::count(b.out.begin(), b.out.end(), '\n') == 2);

  const auto s = run_spec(make("shuffle", {{"config", kData + "/small.json"}}, {1}));
  CHECK(s.code == kOk);
  CHECK(first_line(s.out) == kMetricsHeader);
  CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 1 + 5);

  std::ostringstream c;
  compare_experiment(small(), {1, 2}, &c);
  CHECK(first_line(c.str()) == kCompareHeader);

  DemoParams p;
  p.cfg = small();
  p.test_points = 100;
  std::ostringstream d;
  demo_experiment(p, {1}, &d);
  CHECK(first_line(d.str()) == kDemoHeader);
}

TEST_CASE("output is deterministic for fixed seeds") {
  std::ostringstream a, b;
  shuffle_experiment(small(), {4, 5}, &a);
  shuffle_experiment(small(), {4, 5}, &b);
  CHECK(a.str() == b.str());
  std::ostringstream c, d;
  compare_experiment(small(), {4, 5}, &c);
  compare_experiment(small(), {4, 5}, &d);
  CHECK(c.str() == d.str());
}

TEST_CASE("shuffle summary") {
  const auto cfg = small();
  const auto s = shuffle_experiment(cfg, {1, 2, 3}, nullptr);
  CHECK(s.runs == 3);
  CHECK(s.mean_transmissions == doctest::Approx(static_cast<double>(cfg.G())));
  CHECK(s.implied_c == 2);
}

TEST_CASE("compare counts pliable broadcasts as G") {
  const auto cfg = small();
  const auto s = compare_experiment(cfg, {1, 2, 3}, nullptr);
  CHECK(s.pliable_tx == 3 * cfg.T * cfg.G());
  CHECK(s.index_coded_tx <= s.uncoded_tx);
}

TEST_CASE("demo") {
  DemoParams p;
  p.cfg = small();
  p.test_points = 200;
  p.cfg.T = 0;
  const auto none = demo_experiment(p, {1}, nullptr);
  CHECK(none.size() == 3);
  for (const auto& r : none) CHECK(r.iter == 0);

  p.cfg.T = 4;
  const auto rows = demo_experiment(p, {1, 2}, nullptr);
  CHECK(rows.size() == 2 * 3 * 5);
  for (const auto& r : rows) {
    CHECK(r.error_rate >= 0.0);
    CHECK(r.error_rate <= 1.0);
    if (r.iter == 0 || r.scheme == "none") CHECK(r.transmissions == 0);
    if (r.iter > 0 && r.scheme == "pliable") CHECK(r.transmissions == p.cfg.G());
  }
  p.schemes = {"bogus"};
  CHECK_THROWS_AS(demo_experiment(p, {1}, nullptr), ConfigError);
}

TEST_CASE("shuffling beats a fixed allocation in most paired demo seeds") {
  DemoParams p;
  p.cfg.m = 120;
  p.cfg.n = 6;
  p.cfg.s = 20;
  p.cfg.m1 = 4;
  p.cfg.r = 2;
  p.cfg.T = 10;
  p.schemes = {"none", "pliable"};
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  std::map<std::pair<std::uint64_t, std::string>, double> last;
  for (const auto& r : demo_experiment(p, seeds, nullptr)) {
    if (r.iter == p.cfg.T) last[{r.seed, r.scheme}] = r.error_rate;
  }
  int wins = 0;
  for (auto s : seeds) wins += last[{s, "none"}] >= last[{s, "pliable"}];
  CHECK(wins >= 7);
}
