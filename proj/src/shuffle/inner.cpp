#include <algorithm>
#include <map>

#include "pliable/errors.hpp"
#include "pliable/shuffle.hpp"

namespace pliable::shuffle {

namespace {

void check_shape(const ShuffleConfig& cfg, const OuterLayer& outer) {
  if (outer.n() != cfg.n || outer.G() != cfg.G()) {
    throw DimensionError("outer layer is " + std::to_string(outer.n()) + "x" + std::to_string(outer.G()) +
                         ", config needs " + std::to_string(cfg.n) + "x" + std::to_string(cfg.G()));
  }
}

}  // namespace

std::vector<CacheState> init_caches(const ShuffleConfig& cfg, const OuterLayer& outer, Rng& rng) {
  cfg.validate();
  check_shape(cfg, outer);
  std::vector<CacheState> caches(cfg.n, CacheState(cfg.m));
  for (std::size_t i = 0; i < cfg.n; ++i) {
    for (auto g : outer.groups_of(i)) {
      for (auto off : rng.sample(cfg.m1, cfg.per_group())) caches[i].set(group_begin(cfg, g) + off);
    }
  }
  return caches;
}

std::vector<CacheState> init_caches(const ShuffleConfig& cfg, const OuterLayer& outer, std::uint64_t seed) {
  Rng rng(seed);
  return init_caches(cfg, outer, rng);
}

void check_balance(const std::vector<CacheState>& caches, const ShuffleConfig& cfg, const OuterLayer& outer) {
  check_shape(cfg, outer);
  if (caches.size() != cfg.n) throw DimensionError("one cache per worker required");
  for (std::size_t i = 0; i < cfg.n; ++i) {
    if (caches[i].size() != cfg.m) throw DimensionError("cache length differs from m");
    for (std::size_t g = 0; g < cfg.G(); ++g) {
      std::size_t held = 0;
      for (std::size_t j = group_begin(cfg, g); j < group_begin(cfg, g) + cfg.m1; ++j) held += caches[i].test(j);
      const std::size_t want = outer.at(i, g) ? cfg.per_group() : 0;
      if (held != want) {
        throw DomainError("balance violated: worker " + std::to_string(i + 1) + " holds " + std::to_string(held) +
                          " messages of group " + std::to_string(g + 1) + ", expected " + std::to_string(want));
      }
    }
  }
}

std::optional<DecodeEvent> apply_transmission(CacheState& cache, const GroupTransmission& tx, std::size_t worker,
                                              Rng& rng) {
  std::size_t missing = 0, missing_msg = 0;
  for (auto j : tx.messages) {
    if (!cache.test(j)) {
      ++missing;
      missing_msg = j;
    }
  }
  if (missing != 1) return std::nullopt;
  // Every other summand is cached; drop one of them uniformly.
  std::vector<std::size_t> others;
  for (auto j : tx.messages) {
    if (j != missing_msg) others.push_back(j);
  }
  const std::size_t drop = others[rng.below(others.size())];
  cache.set(missing_msg);
  cache.set(drop, false);
  return DecodeEvent{worker, tx.group, missing_msg, drop};
}

IterationResult shuffle_iteration(const std::vector<CacheState>& caches, const ShuffleConfig& cfg,
                                  const OuterLayer& outer, Rng& rng) {
  check_balance(caches, cfg, outer);
  IterationResult out;
  out.caches = caches;
  for (std::size_t g = 0; g < cfg.G(); ++g) {
    GroupTransmission tx{g, {}};
    for (auto off : rng.sample(cfg.m1, cfg.r)) tx.messages.push_back(group_begin(cfg, g) + off);
    std::sort(tx.messages.begin(), tx.messages.end());
    for (auto i : outer.workers_of(g)) {
      if (auto ev = apply_transmission(out.caches[i], tx, i, rng)) out.decodes.push_back(*ev);
    }
    out.transmissions.push_back(std::move(tx));
  }
  check_balance(out.caches, cfg, outer);
  return out;
}

const CacheState& ShuffleRun::state_after(std::size_t t, std::size_t worker) const {
  if (t < history.iterations()) return history.at(t, worker);
  if (t == history.iterations()) return final_caches.at(worker);
  throw DomainError("run has fewer shuffles than requested");
}

ShuffleRun run_shuffle(const ShuffleConfig& cfg, const OuterLayer& outer, std::uint64_t seed) {
  cfg.validate();
  check_shape(cfg, outer);
  Rng rng(seed);
  ShuffleRun run{ShuffleHistory(cfg.n, cfg.m), {}, {}, {}, 0, 0, {}};
  run.implied_c = (cfg.d2() + cfg.r - 1) / cfg.r;

  auto caches = init_caches(cfg, outer, rng);
  std::vector<std::uint64_t> group_decodes(cfg.G(), 0);
  std::vector<const CacheState*> seen;  // every recorded slot, for the running average
  HammingAverage running;
  std::size_t min_cross = cfg.m + 1;

  for (std::size_t t = 0; t < cfg.T; ++t) {
    run.history.push_iteration(caches);
    const auto& row = run.history.iteration(t);
    for (std::size_t i = 0; i < cfg.n; ++i) {
      for (auto* prev : seen) running.total += hamming(row[i], *prev);
      for (std::size_t k = 0; k < i; ++k) {
        const std::size_t d = hamming(row[i], row[k]);
        running.total += d;
        min_cross = std::min(min_cross, d);
      }
      seen.push_back(&row[i]);
    }
    const auto slots = static_cast<std::uint64_t>(seen.size());
    running.pairs = slots * (slots - 1) / 2;

    auto it = shuffle_iteration(caches, cfg, outer, rng);
    IterationMetrics met;
    met.iter = t + 1;
    met.transmissions = it.transmissions.size();
    met.decodes = it.decodes.size();
    met.avg_hamming_running = running.value();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> per_message;
    for (const auto& ev : it.decodes) {
      ++group_decodes[ev.group];
      met.c_budget_max = std::max(met.c_budget_max, ++per_message[{ev.group, ev.decoded}]);
    }
    run.iterations.push_back(met);
    caches = std::move(it.caches);
  }

  run.final_caches = std::move(caches);
  run.hamming = running;
  run.min_cross_distance = cfg.n >= 2 ? min_cross : 0;
  run.group_decode_rate.resize(cfg.G());
  for (std::size_t g = 0; g < cfg.G(); ++g) {
    const double opportunities = static_cast<double>(outer.workers_of(g).size() * cfg.T);
    run.group_decode_rate[g] = opportunities == 0 ? 0.0 : static_cast<double>(group_decodes[g]) / opportunities;
  }
  return run;
}

}  // namespace pliable::shuffle
