#include "common.hpp"

#include <algorithm>

#include "pliable/codec.hpp"
#include "pliable/errors.hpp"

namespace pliable::solvers {

namespace detail {

SchemeBuilder::SchemeBuilder(const PicInstance& inst)
    : inst_(inst),
      matcher_(inst.m(), inst.all_requests(), inst.c()),
      served_(inst.n(), 0),
      committed_(inst.m(), 0),
      remaining_(inst.n()) {
  matcher_.match_all();
  if (!matcher_.complete()) {
    throw Infeasible("no assignment respects the constraint c = " + std::to_string(inst.c()));
  }
}

std::vector<std::size_t> SchemeBuilder::unserved() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < inst_.n(); ++i) {
    if (!served_[i]) out.push_back(i);
  }
  return out;
}

bool SchemeBuilder::commit(std::size_t client, std::size_t message) {
  if (served_[client]) return false;
  if (!inst_.requests_message(client, message)) return false;
  if (committed_[message] >= inst_.c()) return false;
  if (!matcher_.try_commit(client, message)) return false;
  served_[client] = 1;
  ++committed_[message];
  --remaining_;
  return true;
}

void SchemeBuilder::emit(MessageSet support) {
  std::sort(support.begin(), support.end());
  rows_.push_back(std::move(support));
}

void SchemeBuilder::retract() {
  if (!rows_.empty()) rows_.pop_back();
}

std::size_t SchemeBuilder::serve_fallback(std::size_t client) {
  if (client == kUnmatched) {
    for (std::size_t i = 0; i < inst_.n(); ++i) {
      if (!served_[i]) {
        client = i;
        break;
      }
    }
  }
  if (client == kUnmatched || served_[client]) return 0;
  const std::size_t j = matcher_.assigned(client);
  emit({j});
  std::size_t count = commit(client, j) ? 1 : 0;
  for (std::size_t i = 0; i < inst_.n(); ++i) {
    if (!served_[i] && matcher_.assigned(i) == j && commit(i, j)) ++count;
  }
  return count;
}

SolverResult SchemeBuilder::finish(const std::string& name, std::uint64_t seed) const {
  if (remaining_ != 0) throw VerificationFailure(name + " stopped with unserved clients");
  auto scheme = codec::CodingScheme::from_supports(rows_, inst_.m());
  auto v = codec::verify_scheme(scheme, inst_);
  if (!v.ok()) throw VerificationFailure(name + " produced a scheme that fails verification");
  return SolverResult{name, std::move(scheme), std::move(*v.assignment), seed};
}

}  // namespace detail

nlohmann::json to_json(const SolverResult& r) {
  nlohmann::json tx = nlohmann::json::array();
  for (const auto& s : r.scheme.supports()) {
    nlohmann::json row = nlohmann::json::array();
    for (auto j : s) row.push_back(j + 1);
    tx.push_back(std::move(row));
  }
  nlohmann::json assignment = nlohmann::json::array();
  for (auto j : r.assignment.assigned) assignment.push_back(j + 1);
  return {{"solver", r.solver},
          {"L", r.L()},
          {"transmissions", std::move(tx)},
          {"assignment", std::move(assignment)},
          {"seed", r.seed},
          {"scheme", codec::to_json(r.scheme)}};
}

ChainBound chain_lower_bound(const PicInstance& inst) {
  ChainBound out;
  if (inst.n() == 0) return out;
  // Distinct request sets with the clients holding each.
  std::vector<MessageSet> sets;
  std::vector<std::vector<std::size_t>> holders;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const auto& r = inst.requests(i);
    auto it = std::find(sets.begin(), sets.end(), r);
    if (it == sets.end()) {
      sets.push_back(r);
      holders.push_back({i});
    } else {
      holders[static_cast<std::size_t>(it - sets.begin())].push_back(i);
    }
  }
  std::vector<std::size_t> order(sets.size());
  for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sets[a].size() < sets[b].size(); });

  // best[s]: heaviest chain ending at set s; prev[s] its predecessor.
  std::vector<std::size_t> best(sets.size(), 0), prev(sets.size(), kUnmatched);
  for (std::size_t a = 0; a < order.size(); ++a) {
    const std::size_t s = order[a];
    best[s] = holders[s].size();
    for (std::size_t b = 0; b < a; ++b) {
      const std::size_t t = order[b];
      if (sets[t].size() >= sets[s].size()) continue;
      if (!std::includes(sets[s].begin(), sets[s].end(), sets[t].begin(), sets[t].end())) continue;
      if (best[t] + holders[s].size() > best[s]) {
        best[s] = best[t] + holders[s].size();
        prev[s] = t;
      }
    }
  }
  std::size_t top = order.front();
  for (auto s : order) {
    if (best[s] > best[top]) top = s;
  }
  out.length = best[top];
  out.value = (out.length + inst.c() - 1) / inst.c();
  std::vector<std::size_t> chain;
  for (std::size_t s = top; s != kUnmatched; s = prev[s]) chain.push_back(s);
  std::reverse(chain.begin(), chain.end());
  for (auto s : chain) out.witness.insert(out.witness.end(), holders[s].begin(), holders[s].end());
  return out;
}

BoundReport bound_report(const PicInstance& inst, const SolverResult& scheme) {
  const auto chain = chain_lower_bound(inst);
  return {chain.value, scheme.L(), chain.witness};
}

std::optional<codec::CodingScheme> decide_L1(const PicInstance& inst) {
  if (inst.c() != 1) throw DomainError("the one-transmission test is defined for c = 1 only");
  const BipartiteView view(inst);
  MessageSet chosen;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    std::size_t pick = kUnmatched;
    for (auto j : inst.requests(i)) {
      if (view.message_adj[j].size() == 1) {
        pick = j;
        break;
      }
    }
    if (pick == kUnmatched) return std::nullopt;
    chosen.push_back(pick);
  }
  return codec::CodingScheme::from_supports({chosen}, inst.m());
}

}  // namespace pliable::solvers
