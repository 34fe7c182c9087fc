#include "pliable/matching.hpp"

#include <algorithm>

#include "pliable/errors.hpp"

namespace pliable {

CapacitatedMatcher::CapacitatedMatcher(std::size_t m, std::vector<MessageSet> options, std::size_t capacity)
    : capacity_(capacity), options_(std::move(options)), match_(options_.size(), kUnmatched), holders_(m) {
  if (capacity_ == 0) throw DomainError("matching capacity must be positive");
  for (const auto& o : options_) {
    for (auto j : o) {
      if (j >= m) throw DimensionError("matching option outside the message range");
    }
  }
}

void CapacitatedMatcher::assign(std::size_t client, std::size_t message) {
  match_[client] = message;
  holders_[message].push_back(client);
}

void CapacitatedMatcher::unmatch(std::size_t client) {
  const std::size_t j = match_[client];
  if (j == kUnmatched) return;
  auto& h = holders_[j];
  h.erase(std::find(h.begin(), h.end(), client));
  match_[client] = kUnmatched;
}

bool CapacitatedMatcher::dfs(std::size_t client, std::vector<char>& visited) {
  // A free option is taken before anyone is displaced.
  for (auto j : options_[client]) {
    if (!visited[j] && holders_[j].size() < capacity_) {
      visited[j] = 1;
      assign(client, j);
      return true;
    }
  }
  for (auto j : options_[client]) {
    if (visited[j]) continue;
    visited[j] = 1;
    // Copy: the holder list changes when a displaced client moves.
    const auto holders = holders_[j];
    for (auto h : holders) {
      if (dfs(h, visited)) {
        auto& hj = holders_[j];
        hj.erase(std::find(hj.begin(), hj.end(), h));
        assign(client, j);
        return true;
      }
    }
  }
  return false;
}

bool CapacitatedMatcher::augment(std::size_t client) {
  if (match_[client] != kUnmatched) return true;
  std::vector<char> visited(holders_.size(), 0);
  return dfs(client, visited);
}

std::size_t CapacitatedMatcher::match_all() {
  std::size_t matched = 0;
  for (std::size_t i = 0; i < options_.size(); ++i) {
    if (augment(i)) ++matched;
  }
  return matched;
}

std::vector<std::size_t> CapacitatedMatcher::unmatched() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < match_.size(); ++i) {
    if (match_[i] == kUnmatched) out.push_back(i);
  }
  return out;
}

bool CapacitatedMatcher::complete() const {
  return std::none_of(match_.begin(), match_.end(), [](std::size_t j) { return j == kUnmatched; });
}

bool CapacitatedMatcher::try_commit(std::size_t client, std::size_t message) {
  if (message >= holders_.size()) throw DimensionError("message out of range");
  const std::size_t old = match_[client];
  MessageSet old_options = options_[client];
  options_[client] = {message};
  if (old == message) return true;
  unmatch(client);
  if (augment(client)) return true;
  // A failed search leaves the matching untouched, so restoring is local.
  options_[client] = std::move(old_options);
  if (old != kUnmatched) assign(client, old);
  return false;
}

}  // namespace pliable
