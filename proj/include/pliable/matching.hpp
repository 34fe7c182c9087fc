#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "pliable/model.hpp"

namespace pliable {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

/// Clients-to-messages matching where each message may be used by at most
/// `capacity` clients. Augmenting paths (Kuhn) visit messages in ascending
/// index order, so results are deterministic.
class CapacitatedMatcher {
 public:
  CapacitatedMatcher(std::size_t m, std::vector<MessageSet> options, std::size_t capacity);

  std::size_t clients() const { return options_.size(); }
  std::size_t capacity() const { return capacity_; }

  /// Tries to match every client, in index order. Returns the number matched.
  std::size_t match_all();
  /// Searches for an augmenting path starting at `client`.
  bool augment(std::size_t client);
  void unmatch(std::size_t client);

  std::size_t assigned(std::size_t client) const { return match_[client]; }
  std::size_t load(std::size_t message) const { return holders_[message].size(); }
  const std::vector<std::size_t>& assignment() const { return match_; }
  std::vector<std::size_t> unmatched() const;
  bool complete() const;

  const MessageSet& options(std::size_t client) const { return options_[client]; }

  /// Pins `client` to `message` while every other client stays matched.
  /// On failure nothing changes and false is returned. Once pinned, the
  /// client is never rerouted by later augmentations.
  bool try_commit(std::size_t client, std::size_t message);

 private:
  bool dfs(std::size_t client, std::vector<char>& visited);
  void assign(std::size_t client, std::size_t message);

  std::size_t capacity_;
  std::vector<MessageSet> options_;
  std::vector<std::size_t> match_;
  std::vector<std::vector<std::size_t>> holders_;
};

}  // namespace pliable
