#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pliable/codec.hpp"
#include "pliable/model.hpp"

namespace pliable::solvers {

/// A verified scheme plus the witness assignment that verify_scheme found.
struct SolverResult {
  std::string solver;
  codec::CodingScheme scheme;
  codec::Assignment assignment;
  std::uint64_t seed = 0;

  std::size_t L() const { return scheme.L(); }
};

/// {"solver", "L", "transmissions" (1-based supports), "assignment" (1-based),
///  "seed", "scheme"}.
nlohmann::json to_json(const SolverResult& r);

/// One-transmission test for c = 1: YES iff every client owns a private
/// message of bipartite degree 1. Returns the coefficient-1 sum of those
/// messages, or nullopt. Throws DomainError when c > 1.
std::optional<codec::CodingScheme> decide_L1(const PicInstance& inst);

inline constexpr std::uint64_t kDefaultBruteBudget = 20'000'000;

/// Smallest L <= L_max admitting a valid L x m scheme over GF(q), found by
/// exhaustive search over coding matrices up to row equivalence (column
/// echelon enumeration with feasibility pruning). nullopt when no L <= L_max
/// works. Throws BudgetExceeded when the node budget runs out first.
std::optional<SolverResult> brute_force_optimal(const PicInstance& inst, std::size_t L_max, std::uint32_t q = 2,
                                                std::uint64_t node_budget = kDefaultBruteBudget);

struct ChainBound {
  std::size_t value = 0;                 // ceil(k / c)
  std::size_t length = 0;                // k, clients on the heaviest nested chain
  std::vector<std::size_t> witness;      // those clients, innermost set first
};

/// Longest chain of nested request sets (duplicates count by multiplicity).
ChainBound chain_lower_bound(const PicInstance& inst);

/// Greedy induced-star-forest colouring; one coefficient-1 sum per colour.
/// Throws Infeasible when no capacitated assignment exists at all.
SolverResult star_forest_partition(const PicInstance& inst);

/// Induced star forest: messages[s] is adjacent, among the pattern's
/// clients, to exactly leaves[s]; every leaf sees exactly one pattern message.
struct KPattern {
  MessageSet messages;
  std::vector<std::vector<std::size_t>> leaves;

  std::size_t k() const { return messages.size(); }
  std::vector<std::size_t> clients() const;
};

/// Checks sizes (k messages, kc distinct clients) and the induced condition.
bool is_k_pattern(const BipartiteView& view, const KPattern& pattern, std::size_t c, std::string* why = nullptr);

inline constexpr std::uint64_t kDefaultPatternBudget = 1'000'000;

struct PatternSearch {
  std::optional<KPattern> pattern;
  std::uint64_t nodes = 0;
  bool budget_exhausted = false;
};

/// Exact backtracking for a k-pattern restricted to `unsatisfied` clients and
/// `unused` messages. Messages are tried in ascending order of live degree;
/// `tie_rank` (indexed by message, optional) breaks ties.
PatternSearch find_k_pattern(const BipartiteView& view, std::size_t k, std::size_t c,
                             const std::vector<std::size_t>& unsatisfied, const MessageSet& unused,
                             std::uint64_t budget = kDefaultPatternBudget,
                             const std::vector<std::uint64_t>* tie_rank = nullptr);

struct TransmissionRecord {
  std::string phase;  // "pattern", "uncoded", "fallback", "star_forest"
  std::size_t k = 0;  // pattern size or star count
  std::size_t served = 0;
};

struct RandTransOptions {
  std::uint64_t pattern_budget = kDefaultPatternBudget;
};

struct RandTransResult : SolverResult {
  std::vector<TransmissionRecord> log;
  std::size_t initial_k = 0;
};

/// Repeated k-pattern extraction; k starts at ceil(ln n / ln(1/(1-p_hat))),
/// is pushed upward while patterns exist on the first transmission, and
/// drops by one whenever a search fails. Once fewer than
/// max(c*ceil(log2 n), 2c) clients remain they are served by uncoded sends.
RandTransResult rand_trans(const PicInstance& inst, std::uint64_t seed, const RandTransOptions& options = {});

struct TwoStepResult : SolverResult {
  std::size_t step1 = 0;
  std::size_t step2 = 0;
  std::vector<TransmissionRecord> log;
};

/// ceil(n/c) uncoded sends of the most-requested message, then the leftover
/// clients in groups of at most c, each group served by star-forest colouring.
TwoStepResult two_step_scheme(const PicInstance& inst, std::uint64_t seed);

/// ln E[Y_k] for B(m, n, p): ln C(m,k) + ln C(n,kc) + ln((kc)!/(c!)^k)
/// + kc ln p + k(k-1)c ln(1-p). Requires k <= m, kc <= n, 0 < p < 1.
double expected_patterns(std::size_t m, std::size_t n, double p, std::size_t c, std::size_t k);

struct K0Bracket {
  std::size_t k0 = 0;     // max k with ln E[Y_k] >= 0 (0 if none)
  double x1 = 0.0;        // closed-form root of f1 without o(1) terms
  double x2 = 0.0;        // closed-form root of f2 without o(1) terms
  double x1_alt_sign = 0.0;  // same with the ln ln(1/(1-p))/c term negated
  double x2_alt_sign = 0.0;
  double x1_root = 0.0;   // numeric roots of f1 and f2
  double x2_root = 0.0;
  bool in_bracket = false;  // floor(x1) - 1 <= k0 <= ceil(x2)
  bool in_strict_bracket = false;  // floor(x1) <= k0 <= ceil(x2) - 1
};

K0Bracket k0_bracket(std::size_t m, std::size_t n, double p, std::size_t c);

/// Lower bound from nested request sets and upper bound from a scheme.
struct BoundReport {
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::vector<std::size_t> chain;
};

BoundReport bound_report(const PicInstance& inst, const SolverResult& scheme);

}  // namespace pliable::solvers
