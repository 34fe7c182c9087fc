#include <algorithm>
#include <functional>
#include <set>

#include "pliable/errors.hpp"
#include "pliable/gf.hpp"
#include "pliable/shuffle.hpp"

namespace pliable::shuffle {

using Rows = std::vector<std::vector<std::uint8_t>>;

OuterLayer build_outer_recursive(std::size_t d1, const std::vector<std::size_t>& primes,
                                 const std::vector<std::size_t>& reps) {
  if (d1 == 0) throw DomainError("d1 must be at least 1");
  if (primes.size() != reps.size()) throw DimensionError("need one repetition count per prime");
  for (std::size_t l = 0; l < primes.size(); ++l) {
    if (primes[l] > UINT32_MAX || !gf::Field::is_prime(static_cast<std::uint32_t>(primes[l]))) {
      throw DomainError("block size " + std::to_string(primes[l]) + " is not prime");
    }
    if (reps[l] < 1 || reps[l] > primes[l]) throw DomainError("repetition count must lie in [1, k]");
    if (d1 > primes[l]) throw DomainError("d1 must not exceed any block size k");
  }

  Rows b(1, std::vector<std::uint8_t>(d1, 1));
  for (std::size_t l = 0; l < primes.size(); ++l) {
    const std::size_t k = primes[l];
    const std::size_t rows1 = b.size(), cols1 = b.front().size();
    Rows next;
    next.reserve(rows1 * k * reps[l]);
    for (std::size_t i = 0; i < reps[l]; ++i) {
      Rows block(rows1 * k, std::vector<std::uint8_t>(cols1 * k, 0));
      for (std::size_t a = 0; a < rows1; ++a) {
        std::size_t t = 0;  // position of this one within its row
        for (std::size_t col = 0; col < cols1; ++col) {
          if (!b[a][col]) continue;
          const std::size_t shift = (i * t) % k;
          // P^shift has a one at (x, (x - shift) mod k).
          for (std::size_t x = 0; x < k; ++x) block[a * k + x][col * k + (x + k - shift) % k] = 1;
          ++t;
        }
      }
      for (auto& row : block) next.push_back(std::move(row));
    }
    b = std::move(next);
  }

  OuterLayer out(std::move(b));
  std::size_t d2 = 1;
  for (auto i : reps) d2 *= i;
  const auto rep = verify_outer(out, d1, d2);
  if (!rep.ok()) throw VerificationFailure("recursive construction produced a matrix that is not C4-free biregular");
  return out;
}

RandomOuter build_outer_random(std::size_t n, std::size_t G, std::size_t d1, std::size_t max_violations,
                               std::uint64_t seed, std::size_t attempts) {
  if (d1 > G) throw DomainError("d1 must not exceed G");
  if (attempts == 0) throw DomainError("need at least one attempt");
  Rng rng(seed);
  RandomOuter best;
  bool have = false;
  for (std::size_t a = 0; a < attempts; ++a) {
    Rows rows(n, std::vector<std::uint8_t>(G, 0));
    for (auto& row : rows) {
      for (auto g : rng.sample(G, d1)) row[g] = 1;
    }
    OuterLayer layer(std::move(rows));
    auto rep = verify_outer(layer);
    if (!have || rep.violating_pairs.size() < best.report.violating_pairs.size()) {
      best.layer = std::move(layer);
      best.report = std::move(rep);
      have = true;
    }
    best.attempts_used = a + 1;
    if (best.report.violating_pairs.size() <= max_violations) break;
  }
  return best;
}

OuterLayer build_outer_cyclic(std::size_t G, const std::vector<std::size_t>& base) {
  if (G == 0) throw DomainError("G must be positive");
  std::set<std::size_t> pos(base.begin(), base.end());
  if (pos.size() != base.size()) throw DomainError("base block has repeated positions");
  for (auto p : pos) {
    if (p >= G) throw DomainError("base block position outside [0, G)");
  }
  Rows rows(G, std::vector<std::uint8_t>(G, 0));
  for (std::size_t shift = 0; shift < G; ++shift) {
    for (auto p : pos) rows[shift][(p + shift) % G] = 1;
  }
  OuterLayer out(std::move(rows));
  const auto rep = verify_outer(out, base.size(), base.size());
  if (!rep.ok()) throw VerificationFailure("cyclic base block has a repeated difference");
  return out;
}

std::optional<std::vector<std::size_t>> find_cyclic_base(std::size_t G, std::size_t d1) {
  if (d1 == 0 || d1 > G) return std::nullopt;
  std::vector<std::size_t> block{0};
  std::vector<char> used(G, 0);
  // Depth-first over increasing positions; differences (both signs) must stay distinct.
  std::function<bool()> extend = [&]() -> bool {
    if (block.size() == d1) return true;
    for (std::size_t p = block.back() + 1; p < G; ++p) {
      std::vector<std::size_t> added;
      bool ok = true;
      for (auto q : block) {
        const std::size_t d = (p + G - q) % G, e = (q + G - p) % G;
        if (used[d] || used[e] || d == e) {
          ok = false;
          break;
        }
        used[d] = used[e] = 1;
        added.push_back(d);
        added.push_back(e);
      }
      if (ok) {
        block.push_back(p);
        if (extend()) return true;
        block.pop_back();
      }
      for (auto d : added) used[d] = 0;
    }
    return false;
  };
  if (extend()) return block;
  return std::nullopt;
}

namespace {

std::vector<std::size_t> prime_factors(std::size_t x) {
  std::vector<std::size_t> f;
  for (std::size_t p = 2; p * p <= x; ++p) {
    while (x % p == 0) {
      f.push_back(p);
      x /= p;
    }
  }
  if (x > 1) f.push_back(x);
  return f;
}

// Repetition counts i_j in [1, k_j] whose product is `target`.
bool split_reps(const std::vector<std::size_t>& primes, std::size_t idx, std::size_t target,
                std::vector<std::size_t>& reps) {
  if (idx == primes.size()) return target == 1;
  for (std::size_t i = std::min(primes[idx], target); i >= 1; --i) {
    if (target % i != 0) continue;
    reps[idx] = i;
    if (split_reps(primes, idx + 1, target / i, reps)) return true;
  }
  return false;
}

}  // namespace

OuterLayer make_outer(const ShuffleConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const std::size_t G = cfg.G(), d1 = cfg.d1();
  if (cfg.outer == "random") {
    return build_outer_random(cfg.n, G, d1, 0, seed, 2000).layer;
  }
  if (cfg.outer == "cyclic") {
    if (cfg.n != G) throw ConfigError("cyclic outer layer needs n = G");
    auto base = find_cyclic_base(G, d1);
    if (!base) throw ConfigError("no cyclic base block with distinct differences for this (G, d1)");
    return build_outer_cyclic(G, *base);
  }
  if (G % d1 != 0) throw ConfigError("recursive outer layer needs d1 to divide G");
  const auto primes = prime_factors(G / d1);
  std::size_t prod = 1;
  for (auto k : primes) prod *= k;
  if (cfg.n % prod != 0) throw ConfigError("recursive outer layer needs n to be a multiple of G/d1");
  for (auto k : primes) {
    if (d1 > k) throw ConfigError("recursive outer layer needs d1 <= every prime factor of G/d1");
  }
  std::vector<std::size_t> reps(primes.size(), 1);
  if (!split_reps(primes, 0, cfg.n / prod, reps)) {
    throw ConfigError("n cannot be written as prod(k_j i_j) with i_j <= k_j");
  }
  return build_outer_recursive(d1, primes, reps);
}

}  // namespace pliable::shuffle
