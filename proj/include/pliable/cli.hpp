#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pliable/model.hpp"
#include "pliable/shuffle.hpp"
#include "pliable/solvers.hpp"

namespace pliable::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerification = 2, kInfeasible = 3 };

/// One invocation: subcommand, string-valued parameters, seeds, output path.
struct ExperimentSpec {
  std::string kind;  // solve | bounds | patterns | shuffle | compare | demo | verify-outer
  std::map<std::string, std::string> params;
  std::vector<std::uint64_t> seeds{0};
  std::string out;  // empty: standard output

  /// Throws ConfigError naming the missing or malformed parameter.
  void validate() const;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::vector<std::size_t> get_sizes(const std::string& key, std::vector<std::size_t> fallback) const;
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;
};

/// Parses "1,2,5" or "3-7" (inclusive range) into seeds.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

/// Runs the subcommand. Tabular output goes to --out when given, else to
/// `out`; summaries go to `err`. Returns an ExitCode.
int run(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

// solve ----------------------------------------------------------------

struct SolveOutcome {
  std::string solver;
  std::optional<solvers::SolverResult> result;  // absent: no scheme within the search limit
  std::optional<solvers::ChainBound> bound;     // chain_bound only
  nlohmann::json json;
  std::string line;  // "L = 2", "lower bound = 3", ...
};

/// Runs a named solver and re-verifies its scheme. Solvers: decide_l1,
/// brute, star_forest, rand_trans, two_step, chain_bound. Throws
/// VerificationFailure if a scheme does not verify.
SolveOutcome solve(const PicInstance& inst, const std::string& solver, std::uint64_t seed, std::size_t L_max = 3,
                   std::uint32_t q = 2);

// bounds ---------------------------------------------------------------

inline constexpr const char* kBoundsHeader = "m,n,p,c,k0,x1,x2,in_bracket,rand_trans_mean,reference";

struct BoundsGrid {
  std::vector<std::size_t> n;
  std::vector<std::size_t> m;  // empty: m = n
  std::vector<double> p;
  std::vector<std::size_t> c;
  std::vector<std::uint64_t> seeds;  // RandTrans trials per point
};

struct BoundsRow {
  std::size_t m, n, c;
  double p;
  solvers::K0Bracket bracket;
  double rand_trans_mean;  // over feasible draws; NaN if none
  double reference;        // n / (c ln n)
  std::size_t infeasible;  // draws with no valid assignment at all
};

std::vector<BoundsRow> bounds_experiment(const BoundsGrid& grid, std::ostream* csv);

// shuffle --------------------------------------------------------------

inline constexpr const char* kMetricsHeader = "run,iter,transmissions,decodes,avg_hamming_running,c_budget_max";

struct ShuffleSummary {
  shuffle::OuterReport outer;
  std::size_t runs = 0;
  double mean_transmissions = 0;  // per iteration
  double mean_avg_hamming = 0;
  double mean_decode_rate = 0;
  std::size_t max_c_budget = 0;
  std::size_t implied_c = 0;
  std::size_t min_cross_distance = 0;
};

ShuffleSummary shuffle_experiment(const shuffle::ShuffleConfig& cfg, const std::vector<std::uint64_t>& seeds,
                                  std::ostream* csv);

// compare --------------------------------------------------------------

inline constexpr const char* kCompareHeader =
    "run,iter,pliable_tx,uncoded_tx,index_coded_tx,pliable_over_uncoded,index_over_uncoded";

struct CompareSummary {
  std::size_t pliable_tx = 0;
  std::size_t uncoded_tx = 0;
  std::size_t index_coded_tx = 0;
  double pliable_over_uncoded = 0;
  double index_over_uncoded = 0;
  double pliable_avg_hamming = 0;
  double random_avg_hamming = 0;
  std::size_t outer_violations = 0;
};

/// Matched-seed comparison. The outer layer is built once from cfg.seed;
/// every seed drives one pliable run and one random re-allocation run whose
/// allocations are delivered both uncoded and index-coded.
CompareSummary compare_experiment(const shuffle::ShuffleConfig& cfg, const std::vector<std::uint64_t>& seeds,
                                  std::ostream* csv);

// demo -----------------------------------------------------------------

inline constexpr const char* kDemoHeader = "seed,iter,scheme,error_rate,transmissions";

struct DemoParams {
  shuffle::ShuffleConfig cfg;     // T = number of shuffle iterations (0 allowed)
  std::size_t dim = 20;
  std::size_t points_per_message = 2;
  std::size_t test_points = 2000;
  double learning_rate = 0.05;
  std::vector<std::string> schemes{"none", "pliable", "random"};
};

struct DemoRow {
  std::uint64_t seed;
  std::size_t iter;
  std::string scheme;
  double error_rate;
  std::size_t transmissions;
};

/// Synthetic linearly separable classification: each message is a block of
/// labelled points, workers run one local SGD epoch on their cache, the
/// master averages the models, then caches are shuffled by the scheme.
std::vector<DemoRow> demo_experiment(const DemoParams& params, const std::vector<std::uint64_t>& seeds,
                                     std::ostream* csv);

}  // namespace pliable::cli
