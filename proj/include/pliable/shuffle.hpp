#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pliable/model.hpp"
#include "pliable/rng.hpp"

namespace pliable::shuffle {

/// Parameters of the two-layer shuffle. Messages are split into G = m/m1
/// contiguous groups; each worker owns d1 groups and caches m1(1-1/r)
/// messages from each; each group is owned by d2 workers.
struct ShuffleConfig {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t s = 0;
  std::size_t m1 = 0;
  std::size_t r = 0;
  std::size_t T = 1;
  std::uint64_t seed = 0;
  std::string outer = "random";  // "recursive" | "random" | "cyclic"

  std::size_t G() const { return m / m1; }
  std::size_t per_group() const { return m1 - m1 / r; }  // m1(1 - 1/r)
  std::size_t d1() const { return s / per_group(); }
  std::size_t d2() const { return n * d1() / G(); }

  /// Names of the violated conditions, e.g. "r divides m1". Empty if valid.
  std::vector<std::string> violations() const;
  /// Throws ConfigError listing every violated condition.
  void validate() const;
};

ShuffleConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ShuffleConfig& cfg);
ShuffleConfig load_config(const std::string& path);

/// n x G worker/group incidence matrix with its adjacency lists.
class OuterLayer {
 public:
  OuterLayer() = default;
  explicit OuterLayer(std::vector<std::vector<std::uint8_t>> rows);

  std::size_t n() const { return rows_.size(); }
  std::size_t G() const { return G_; }
  bool at(std::size_t i, std::size_t g) const { return rows_[i][g] != 0; }
  const std::vector<std::vector<std::uint8_t>>& rows() const { return rows_; }
  const std::vector<std::size_t>& groups_of(std::size_t worker) const { return D_[worker]; }
  const std::vector<std::size_t>& workers_of(std::size_t group) const { return N_[group]; }

  bool operator==(const OuterLayer& o) const { return rows_ == o.rows_; }

 private:
  std::size_t G_ = 0;
  std::vector<std::vector<std::uint8_t>> rows_;
  std::vector<std::vector<std::size_t>> D_;
  std::vector<std::vector<std::size_t>> N_;
};

struct OuterReport {
  bool rows_regular = false;
  bool cols_regular = false;
  bool c4_free = false;
  std::vector<std::pair<std::size_t, std::size_t>> violating_pairs;  // workers sharing >= 2 groups
  std::size_t excess_overlap = 0;  // sum over worker pairs of max(0, shared - 1)
  std::size_t min_row = 0, max_row = 0, min_col = 0, max_col = 0;
  std::vector<std::size_t> column_histogram;  // column_histogram[d] = #groups of degree d

  bool ok() const { return rows_regular && cols_regular && c4_free; }
};

/// Checks degrees against the expectations (0 = accept any common value)
/// and pairwise row overlap <= 1.
OuterReport verify_outer(const OuterLayer& B, std::size_t expect_d1 = 0, std::size_t expect_d2 = 0);

/// Layered permutation-block construction: start from a 1 x d1 all-ones
/// row; at level j replace the t-th one of every row by P^(i t) (P the
/// k_j x k_j cyclic shift) for i = 0..i_j - 1 and stack the results.
/// Yields n = prod(k_j i_j) rows, G = d1 prod(k_j) columns. Requires
/// prime k_j, 1 <= i_j <= k_j and d1 <= min k_j. The result is verified.
OuterLayer build_outer_recursive(std::size_t d1, const std::vector<std::size_t>& primes,
                                 const std::vector<std::size_t>& reps);

struct RandomOuter {
  OuterLayer layer;
  OuterReport report;
  std::size_t attempts_used = 0;
};

/// Each worker draws a uniform d1-subset of the G groups; keeps the draw
/// with the fewest violating pairs, stopping once <= max_violations.
RandomOuter build_outer_random(std::size_t n, std::size_t G, std::size_t d1, std::size_t max_violations,
                               std::uint64_t seed, std::size_t attempts);

/// All G cyclic shifts of `base` (d1 positions in [0, G)). C4-free iff the
/// pairwise differences of `base` are distinct mod G; verified on return.
OuterLayer build_outer_cyclic(std::size_t G, const std::vector<std::size_t>& base);

/// Smallest (lexicographic) base block of size d1 with distinct differences
/// mod G, if one exists.
std::optional<std::vector<std::size_t>> find_cyclic_base(std::size_t G, std::size_t d1);

/// Outer layer for `cfg` according to cfg.outer. Throws ConfigError when the
/// requested construction cannot produce the configured shape.
OuterLayer make_outer(const ShuffleConfig& cfg, std::uint64_t seed);

/// First message index of group g.
inline std::size_t group_begin(const ShuffleConfig& cfg, std::size_t g) { return g * cfg.m1; }

std::vector<CacheState> init_caches(const ShuffleConfig& cfg, const OuterLayer& outer, Rng& rng);
std::vector<CacheState> init_caches(const ShuffleConfig& cfg, const OuterLayer& outer, std::uint64_t seed);

/// Throws DomainError unless every worker holds exactly m1(1-1/r) messages
/// of each owned group and nothing elsewhere.
void check_balance(const std::vector<CacheState>& caches, const ShuffleConfig& cfg, const OuterLayer& outer);

struct GroupTransmission {
  std::size_t group = 0;
  MessageSet messages;  // r distinct messages of the group, ascending
};

struct DecodeEvent {
  std::size_t worker = 0;
  std::size_t group = 0;
  std::size_t decoded = 0;
  std::size_t discarded = 0;
};

struct IterationResult {
  std::vector<CacheState> caches;
  std::vector<GroupTransmission> transmissions;
  std::vector<DecodeEvent> decodes;
};

/// One broadcast per group, groups in ascending order. A worker of the group
/// decodes iff exactly one summand is missing from its cache; it then drops
/// one of the other r-1 summands uniformly at random.
IterationResult shuffle_iteration(const std::vector<CacheState>& caches, const ShuffleConfig& cfg,
                                  const OuterLayer& outer, Rng& rng);

/// Applies one transmission to a single cache (no randomness when the
/// worker does not decode). Returns the decode event if any.
std::optional<DecodeEvent> apply_transmission(CacheState& cache, const GroupTransmission& tx, std::size_t worker,
                                              Rng& rng);

struct IterationMetrics {
  std::size_t iter = 0;
  std::size_t transmissions = 0;
  std::size_t decodes = 0;
  double avg_hamming_running = 0.0;
  std::size_t c_budget_max = 0;  // most workers decoding one message from one broadcast
};

struct ShuffleRun {
  ShuffleHistory history;             // z^1 .. z^T (z^1 = initial caches)
  std::vector<CacheState> final_caches;  // after the T-th shuffle
  std::vector<IterationMetrics> iterations;
  std::vector<double> group_decode_rate;  // decodes / (|N(g)| * T)
  std::size_t min_cross_distance = 0;     // min over t and worker pairs
  std::size_t implied_c = 0;              // ceil(d2 / r)
  HammingAverage hamming;

  /// Cache state of `worker` after `t` shuffles (t = 0 is the initial state).
  const CacheState& state_after(std::size_t t, std::size_t worker) const;
};

/// init_caches followed by T shuffles; records the history and metrics.
ShuffleRun run_shuffle(const ShuffleConfig& cfg, const OuterLayer& outer, std::uint64_t seed);

struct RandomnessOptions {
  std::vector<std::size_t> timestamps{0, 1, 10, 50};
  double alpha = 0.01;
};

struct UniformityResult {
  std::size_t t = 0;
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 0.0;
  bool pass = false;
};

struct IndependenceResult {
  std::size_t t = 0;
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 0.0;
  double mean_bit_correlation = 0.0;
  bool pass = false;
};

struct ReversibilityPair {
  std::size_t from = 0, to = 0;
  std::uint64_t forward = 0, backward = 0;
  bool within = true;  // |forward - backward| <= 3 sqrt(forward + backward)
};

struct RandomnessReport {
  std::size_t runs = 0;
  std::size_t states = 0;  // C(m1, m1(1-1/r))
  std::size_t worker = 0, group = 0;         // tracked (worker, group)
  std::size_t partner = 0;                   // second worker sharing `group`
  std::vector<UniformityResult> uniformity;
  std::vector<IndependenceResult> independence;
  std::vector<ReversibilityPair> reversibility;
  bool reversible = true;
};

/// Statistics of the truncated state z_i^t restricted to one owned group
/// across independent runs. Throws DomainError for fewer than 1000 runs.
RandomnessReport randomness_check(const std::vector<ShuffleRun>& runs, const ShuffleConfig& cfg,
                                  const OuterLayer& outer, const RandomnessOptions& options = {});

/// P(exactly one of r uniform draws without replacement from m1 messages
/// lies outside a fixed cached set of m1(1-1/r)), estimated by simulation.
double decode_probability_estimate(std::size_t m1, std::size_t r, std::size_t trials, std::uint64_t seed);

/// Exact value of the same probability (hypergeometric).
double decode_probability_exact(std::size_t m1, std::size_t r);

}  // namespace pliable::shuffle
