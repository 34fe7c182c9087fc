#include "pliable/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "pliable/errors.hpp"

namespace pliable::baselines {

Allocation random_allocation(std::size_t m, std::size_t n, std::size_t s, Rng& rng) {
  if (s > m) throw DomainError("cache size s exceeds m");
  Allocation a(n);
  for (auto& set : a) {
    set = rng.sample(m, s);
    std::sort(set.begin(), set.end());
  }
  return a;
}

Allocation random_allocation(std::size_t m, std::size_t n, std::size_t s, std::uint64_t seed) {
  Rng rng(seed);
  return random_allocation(m, n, s, rng);
}

namespace {

void check_dims(const Allocation& alloc, const std::vector<CacheState>& caches) {
  if (alloc.size() != caches.size()) throw DimensionError("allocation and caches differ in worker count");
  for (std::size_t i = 0; i < alloc.size(); ++i) {
    for (auto j : alloc[i]) {
      if (j >= caches[i].size()) throw DimensionError("allocated message outside the cache range");
    }
  }
}

struct Demand {
  std::size_t worker;
  std::size_t message;
};

// Largest-degree-first greedy colouring of a graph given by adjacency lists.
std::vector<std::size_t> welsh_powell(const std::vector<std::vector<std::size_t>>& adj, std::size_t& colours) {
  std::vector<std::size_t> order(adj.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return adj[a].size() > adj[b].size(); });
  const std::size_t none = adj.size();
  std::vector<std::size_t> colour(adj.size(), none);
  std::vector<std::size_t> mark(adj.size() + 1, none);
  colours = 0;
  for (auto v : order) {
    for (auto u : adj[v]) {
      if (colour[u] != none) mark[colour[u]] = v;
    }
    std::size_t c = 0;
    while (mark[c] == v) ++c;
    colour[v] = c;
    colours = std::max(colours, c + 1);
  }
  return colour;
}

std::vector<MessageSet> colour_classes(const std::vector<Demand>& demands, const std::vector<std::size_t>& colour,
                                       std::size_t colours) {
  std::vector<MessageSet> coded(colours);
  for (std::size_t d = 0; d < demands.size(); ++d) coded[colour[d]].push_back(demands[d].message);
  for (auto& c : coded) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return coded;
}

// Every demand must be recoverable from some XOR using cached messages.
bool simulate(const std::vector<Demand>& demands, const std::vector<MessageSet>& coded,
              const std::vector<CacheState>& caches) {
  std::size_t m = caches.empty() ? 0 : caches.front().size();
  Rng rng(0x5eed);
  std::vector<std::uint64_t> value(m);
  for (auto& v : value) v = rng.next();
  std::vector<std::uint64_t> x(coded.size(), 0);
  for (std::size_t l = 0; l < coded.size(); ++l) {
    for (auto j : coded[l]) x[l] ^= value[j];
  }
  for (const auto& d : demands) {
    bool got = false;
    for (std::size_t l = 0; l < coded.size() && !got; ++l) {
      if (!std::binary_search(coded[l].begin(), coded[l].end(), d.message)) continue;
      std::uint64_t y = x[l];
      bool ok = true;
      for (auto j : coded[l]) {
        if (j == d.message) continue;
        if (!caches[d.worker].test(j)) {
          ok = false;
          break;
        }
        y ^= value[j];
      }
      got = ok && y == value[d.message];
    }
    if (!got) return false;
  }
  return true;
}

}  // namespace

std::size_t uncoded_count(const Allocation& alloc, const std::vector<CacheState>& caches) {
  check_dims(alloc, caches);
  std::vector<char> needed(caches.empty() ? 0 : caches.front().size(), 0);
  for (std::size_t i = 0; i < alloc.size(); ++i) {
    for (auto j : alloc[i]) {
      if (!caches[i].test(j)) needed[j] = 1;
    }
  }
  return static_cast<std::size_t>(std::count(needed.begin(), needed.end(), 1));
}

IndexCoding index_coding_greedy(const Allocation& alloc, const std::vector<CacheState>& caches) {
  check_dims(alloc, caches);
  std::vector<Demand> demands;
  for (std::size_t i = 0; i < alloc.size(); ++i) {
    for (auto j : alloc[i]) {
      if (!caches[i].test(j)) demands.push_back({i, j});
    }
  }
  IndexCoding out;
  out.demands = demands.size();
  if (demands.empty()) {
    out.verified = true;
    return out;
  }

  auto compatible = [&](const Demand& a, const Demand& b) {
    if (a.message == b.message) return true;
    return caches[a.worker].test(b.message) && caches[b.worker].test(a.message);
  };

  // Per-demand conflict graph.
  std::vector<std::vector<std::size_t>> adj(demands.size());
  for (std::size_t a = 0; a < demands.size(); ++a) {
    for (std::size_t b = a + 1; b < demands.size(); ++b) {
      if (!compatible(demands[a], demands[b])) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  }
  std::size_t split_colours = 0;
  const auto split = welsh_powell(adj, split_colours);

  // Per-message conflict graph: demanders of a message travel together.
  std::vector<std::size_t> msgs;
  for (const auto& d : demands) msgs.push_back(d.message);
  std::sort(msgs.begin(), msgs.end());
  msgs.erase(std::unique(msgs.begin(), msgs.end()), msgs.end());
  std::vector<std::size_t> msg_of(demands.size());
  for (std::size_t d = 0; d < demands.size(); ++d) {
    msg_of[d] = static_cast<std::size_t>(std::lower_bound(msgs.begin(), msgs.end(), demands[d].message) - msgs.begin());
  }
  std::vector<std::vector<char>> clash(msgs.size(), std::vector<char>(msgs.size(), 0));
  for (std::size_t a = 0; a < demands.size(); ++a) {
    for (auto b : adj[a]) clash[msg_of[a]][msg_of[b]] = 1;
  }
  std::vector<std::vector<std::size_t>> madj(msgs.size());
  for (std::size_t a = 0; a < msgs.size(); ++a) {
    for (std::size_t b = 0; b < msgs.size(); ++b) {
      if (a != b && clash[a][b]) madj[a].push_back(b);
    }
  }
  std::size_t merged_colours = 0;
  const auto merged = welsh_powell(madj, merged_colours);

  if (merged_colours <= split_colours) {
    std::vector<std::size_t> colour(demands.size());
    for (std::size_t d = 0; d < demands.size(); ++d) colour[d] = merged[msg_of[d]];
    out.coded = colour_classes(demands, colour, merged_colours);
  } else {
    out.coded = colour_classes(demands, split, split_colours);
  }
  out.transmissions = out.coded.size();
  out.verified = simulate(demands, out.coded, caches);
  if (!out.verified) throw VerificationFailure("index code failed the decoding simulation");
  return out;
}

std::string to_string(Delivery d) { return d == Delivery::uncoded ? "uncoded" : "index_coded"; }

Delivery delivery_from_string(const std::string& s) {
  if (s == "uncoded") return Delivery::uncoded;
  if (s == "index_coded") return Delivery::index_coded;
  throw DomainError("unknown delivery mode '" + s + "'");
}

BaselineRun random_shuffle_baseline(std::size_t m, std::size_t n, std::size_t s, std::size_t T, Delivery mode,
                                    std::uint64_t seed) {
  if (T == 0) throw DomainError("need at least one iteration");
  Rng rng(seed);
  auto to_caches = [&](const Allocation& a) {
    std::vector<CacheState> z;
    z.reserve(a.size());
    for (const auto& set : a) z.push_back(CacheState::from_messages(m, set));
    return z;
  };
  BaselineRun run{{}, ShuffleHistory(n, m), {}};
  auto caches = to_caches(random_allocation(m, n, s, rng));
  for (std::size_t t = 0; t < T; ++t) {
    run.history.push_iteration(caches);
    const auto next = random_allocation(m, n, s, rng);
    run.transmissions.push_back(mode == Delivery::uncoded ? uncoded_count(next, caches)
                                                          : index_coding_greedy(next, caches).transmissions);
    caches = to_caches(next);
  }
  if (run.history.iterations() * n >= 2) run.hamming = avg_hamming(run.history);
  return run;
}

}  // namespace pliable::baselines
