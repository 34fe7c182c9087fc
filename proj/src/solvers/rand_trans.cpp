#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "pliable/rng.hpp"
#include "pliable/solvers.hpp"

namespace pliable::solvers {

namespace {

// Uncoded send of the message that the most unserved clients request
// (capped by its residual capacity). Falls back to the matcher's pairing
// when the guard refuses every candidate.
std::size_t uncoded_step(detail::SchemeBuilder& b, const BipartiteView& view) {
  const auto& inst = b.instance();
  std::size_t best = kUnmatched, best_gain = 0;
  for (std::size_t j = 0; j < inst.m(); ++j) {
    const std::size_t cap = b.residual(j);
    if (cap == 0) continue;
    std::size_t want = 0;
    for (auto i : view.message_adj[j]) {
      if (!b.served(i)) ++want;
    }
    const std::size_t gain = std::min(cap, want);
    if (gain > best_gain) {
      best_gain = gain;
      best = j;
    }
  }
  if (best == kUnmatched) return b.serve_fallback();
  b.emit({best});
  std::size_t served = 0;
  for (auto i : view.message_adj[best]) {
    if (b.residual(best) == 0) break;
    if (!b.served(i) && b.commit(i, best)) ++served;
  }
  if (served > 0) return served;
  b.retract();
  return b.serve_fallback();
}

}  // namespace

namespace detail {

std::size_t uncoded_send(SchemeBuilder& b, const BipartiteView& view) {
  return uncoded_step(b, view);
}

}  // namespace detail

RandTransResult rand_trans(const PicInstance& inst, std::uint64_t seed, const RandTransOptions& options) {
  detail::SchemeBuilder b(inst);
  const BipartiteView view(inst);
  Rng rng(seed);
  std::vector<std::uint64_t> tie(inst.m());
  for (auto& t : tie) t = rng.next();

  const std::size_t n = inst.n(), c = inst.c();
  const auto log2n = static_cast<std::size_t>(std::ceil(std::log2(std::max<std::size_t>(n, 1))));
  const std::size_t threshold = std::max(c * log2n, 2 * c);

  RandTransResult out;
  std::vector<char> used(inst.m(), 0);

  auto residual_state = [&](std::vector<std::size_t>& clients, MessageSet& messages) {
    clients = b.unserved();
    messages.clear();
    for (std::size_t j = 0; j < inst.m(); ++j) {
      if (!used[j]) messages.push_back(j);
    }
  };

  std::vector<std::size_t> clients;
  MessageSet messages;
  residual_state(clients, messages);

  std::size_t k = 0;
  if (!clients.empty()) {
    std::size_t edges = 0;
    for (auto i : clients) edges += inst.requests(i).size();
    const double p_hat = static_cast<double>(edges) / (static_cast<double>(clients.size()) * inst.m());
    if (p_hat >= 1.0) {
      k = 1;
    } else {
      const double ratio = std::log(static_cast<double>(clients.size())) / -std::log1p(-p_hat);
      k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio)));
    }
  }
  out.initial_k = k;

  bool first = true;
  std::size_t known_fail = kUnmatched;  // smallest k whose search failed
  while (b.remaining() >= threshold && k >= 1) {
    residual_state(clients, messages);
    k = std::min({k, clients.size() / c, messages.size()});
    if (k == 0) break;

    auto found = find_k_pattern(view, k, c, clients, messages, options.pattern_budget, &tie);
    if (found.pattern && first) {
      while (k + 1 < known_fail && k + 1 <= std::min(clients.size() / c, messages.size())) {
        auto bigger = find_k_pattern(view, k + 1, c, clients, messages, options.pattern_budget, &tie);
        if (!bigger.pattern) break;
        found = std::move(bigger);
        ++k;
      }
    }
    if (!found.pattern) {
      known_fail = k;
      --k;
      continue;
    }
    first = false;

    const auto& pat = *found.pattern;
    b.emit(pat.messages);
    std::size_t served = 0;
    for (std::size_t s = 0; s < pat.k(); ++s) {
      used[pat.messages[s]] = 1;
      for (auto i : pat.leaves[s]) served += b.commit(i, pat.messages[s]) ? 1 : 0;
    }
    if (served == 0) {
      b.retract();
      break;
    }
    out.log.push_back({"pattern", pat.k(), served});
  }

  while (b.remaining() > 0) {
    const std::size_t served = uncoded_step(b, view);
    out.log.push_back({"uncoded", 1, served});
  }

  auto res = b.finish("rand_trans", seed);
  static_cast<SolverResult&>(out) = std::move(res);
  return out;
}

}  // namespace pliable::solvers
