#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pliable/matching.hpp"
#include "pliable/model.hpp"
#include "pliable/solvers.hpp"

namespace pliable::solvers::detail {

/// Incrementally assembles a coefficient-1 scheme. Every client marked as
/// served is pinned in a capacitated matching that also keeps all unserved
/// clients matched to some requested message, so the remaining clients can
/// always be finished with uncoded sends.
class SchemeBuilder {
 public:
  /// Throws Infeasible when the instance has no capacitated assignment.
  explicit SchemeBuilder(const PicInstance& inst);

  const PicInstance& instance() const { return inst_; }
  bool served(std::size_t client) const { return served_[client] != 0; }
  std::size_t remaining() const { return remaining_; }
  std::vector<std::size_t> unserved() const;
  std::size_t residual(std::size_t message) const { return inst_.c() - committed_[message]; }
  std::size_t transmissions() const { return rows_.size(); }

  /// Marks `client` as keeping `message`, unless that would strand someone.
  bool commit(std::size_t client, std::size_t message);
  void emit(MessageSet support);
  /// Drops the most recent transmission (used when nobody could be served).
  void retract();

  /// Uncoded send of the message currently matched to `client` (default:
  /// the first unserved one); serves every unserved client matched to that
  /// message. Returns the count.
  std::size_t serve_fallback(std::size_t client = kUnmatched);

  /// Builds, verifies and returns the scheme. Throws VerificationFailure.
  SolverResult finish(const std::string& name, std::uint64_t seed) const;

 private:
  PicInstance inst_;
  CapacitatedMatcher matcher_;
  std::vector<char> served_;
  std::vector<std::size_t> committed_;
  std::size_t remaining_;
  std::vector<MessageSet> rows_;
};

/// Uncoded send of the message wanted by the most unserved clients, capped
/// by residual capacity. Returns the number of clients served.
std::size_t uncoded_send(SchemeBuilder& b, const BipartiteView& view);

/// Serves `clients` (all unserved) by repeated induced-star-forest colours.
/// Appends one record per transmission.
void star_forest_colours(SchemeBuilder& b, const std::vector<std::size_t>& clients,
                         std::vector<TransmissionRecord>* log);

}  // namespace pliable::solvers::detail
