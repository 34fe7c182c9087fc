#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pliable/model.hpp"
#include "pliable/rng.hpp"

namespace pliable::baselines {

/// Per-worker target message sets for the next iteration.
using Allocation = std::vector<MessageSet>;

/// Each worker independently receives a uniform s-subset of [m].
Allocation random_allocation(std::size_t m, std::size_t n, std::size_t s, Rng& rng);
Allocation random_allocation(std::size_t m, std::size_t n, std::size_t s, std::uint64_t seed);

/// Number of distinct messages some worker needs but does not cache; one
/// uncoded broadcast serves every worker needing that message.
std::size_t uncoded_count(const Allocation& alloc, const std::vector<CacheState>& caches);

struct IndexCoding {
  std::size_t transmissions = 0;
  std::size_t demands = 0;                   // (worker, missing message) pairs
  std::vector<MessageSet> coded;             // messages XORed in each transmission
  bool verified = false;                     // decode simulation succeeded
};

/// Greedy index code for the demands alloc_i \ cache_i. Demands conflict
/// unless they ask for the same message or each demander caches the other's
/// message; the conflict graph is coloured largest-degree-first and every
/// colour becomes one XOR. Both the per-demand graph and the per-message
/// graph (all demanders of a message share a colour) are coloured and the
/// smaller colouring is kept. Throws VerificationFailure if simulated
/// decoding fails.
IndexCoding index_coding_greedy(const Allocation& alloc, const std::vector<CacheState>& caches);

enum class Delivery { uncoded, index_coded };

std::string to_string(Delivery d);
Delivery delivery_from_string(const std::string& s);

struct BaselineRun {
  std::vector<std::size_t> transmissions;  // per shuffle
  ShuffleHistory history;                  // cache states z^1 .. z^T
  HammingAverage hamming;
};

/// Random re-allocation shuffling: caches start from a random allocation and
/// each of T iterations ends with a fresh allocation delivered by `mode`.
BaselineRun random_shuffle_baseline(std::size_t m, std::size_t n, std::size_t s, std::size_t T, Delivery mode,
                                    std::uint64_t seed);

}  // namespace pliable::baselines
