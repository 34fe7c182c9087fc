#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pliable/baselines.hpp"
#include "pliable/errors.hpp"
#include "pliable/stats.hpp"

using namespace pliable;
using namespace pliable::baselines;

namespace {

std::vector<CacheState> caches_of(std::size_t m, const Allocation& a) {
  std::vector<CacheState> z;
  for (const auto& set : a) z.push_back(CacheState::from_messages(m, set));
  return z;
}

}  // namespace

TEST_CASE("random allocation") {
  const auto full = random_allocation(5, 3, 5, 1);
  for (const auto& set : full) CHECK(set == MessageSet{0, 1, 2, 3, 4});
  CHECK_THROWS_AS(random_allocation(5, 3, 6, 1), DomainError);
  CHECK(random_allocation(50, 4, 7, 9) == random_allocation(50, 4, 7, 9));
  for (const auto& set : random_allocation(50, 4, 7, 9)) {
    CHECK(set.size() == 7);
    CHECK(std::is_sorted(set.begin(), set.end()));
  }
}

TEST_CASE("mean pairwise intersection is s^2/m") {
  Rng rng(5);
  stats::Running acc;
  for (int k = 0; k < 10000; ++k) {
    const auto a = random_allocation(500, 2, 50, rng);
    std::vector<std::size_t> both;
    std::set_intersection(a[0].begin(), a[0].end(), a[1].begin(), a[1].end(), std::back_inserter(both));
    acc.add(static_cast<double>(both.size()));
  }
  CHECK(std::abs(acc.mean() - 5.0) <= 3 * acc.sem());
}

TEST_CASE("uncoded count") {
  const auto a = random_allocation(20, 4, 5, 3);
  CHECK(uncoded_count(a, caches_of(20, a)) == 0);
  Allocation all(2, MessageSet{0, 1, 2, 3, 4, 5});
  CHECK(uncoded_count(all, std::vector<CacheState>(2, CacheState(6))) == 6);
  CHECK_THROWS_AS(uncoded_count(all, std::vector<CacheState>(3, CacheState(6))), DimensionError);
}

TEST_CASE("uncoded count matches the inclusion probability") {
  // P(message j needed) = 1 - (1 - (s/m)(1 - s/m))^n.
  const double m = 500, s = 50, n = 20;
  const double expect = m * (1 - std::pow(1 - (s / m) * (1 - s / m), n));
  Rng rng(8);
  stats::Running acc;
  for (int k = 0; k < 300; ++k) {
    const auto caches = caches_of(500, random_allocation(500, 20, 50, rng));
    acc.add(static_cast<double>(uncoded_count(random_allocation(500, 20, 50, rng), caches)));
  }
  CHECK(std::abs(acc.mean() - expect) <= 3 * acc.sem() + 1e-9);
}

TEST_CASE("index coding small cases") {
  // Everyone wants message 2, nobody has it.
  Allocation same(4, MessageSet{2});
  const auto a = index_coding_greedy(same, std::vector<CacheState>(4, CacheState(3)));
  CHECK(a.transmissions == 1);
  CHECK(a.demands == 4);
  CHECK(a.verified);

  // Two workers swap: each caches what the other wants.
  Allocation swap{{0, 1}, {0, 1}};
  const std::vector<CacheState> held{CacheState::from_messages(2, {0}), CacheState::from_messages(2, {1})};
  const auto b = index_coding_greedy(swap, held);
  CHECK(b.transmissions == 1);
  CHECK(b.coded == std::vector<MessageSet>{{0, 1}});

  // No side information: k distinct demands need k sends.
  Allocation distinct{{0}, {1}, {2}, {3}, {4}};
  CHECK(index_coding_greedy(distinct, std::vector<CacheState>(5, CacheState(5))).transmissions == 5);

  // Nothing missing.
  CHECK(index_coding_greedy(swap, caches_of(2, swap)).transmissions == 0);
}

TEST_CASE("index coding never exceeds uncoded and ignores worker order") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 10 + rng.below(30), n = 2 + rng.below(8), s = 1 + rng.below(m / 2);
    auto alloc = random_allocation(m, n, s, rng);
    auto caches = caches_of(m, random_allocation(m, n, s, rng));
    const auto ic = index_coding_greedy(alloc, caches);
    CHECK(ic.verified);
    const auto before = uncoded_count(alloc, caches);
    CHECK(ic.transmissions <= before);
    std::reverse(alloc.begin(), alloc.end());
    std::reverse(caches.begin(), caches.end());
    CHECK(uncoded_count(alloc, caches) == before);
    CHECK(index_coding_greedy(alloc, caches).verified);
  }
}

TEST_CASE("random shuffle baseline") {
  CHECK_THROWS_AS(random_shuffle_baseline(20, 4, 5, 0, Delivery::uncoded, 1), DomainError);
  const auto u = random_shuffle_baseline(60, 6, 10, 5, Delivery::uncoded, 2);
  const auto ic = random_shuffle_baseline(60, 6, 10, 5, Delivery::index_coded, 2);
  CHECK(u.transmissions.size() == 5);
  CHECK(u.history.iterations() == 5);
  // Same seed, same allocations: only the delivery differs.
  CHECK(u.hamming.total == ic.hamming.total);
  for (std::size_t t = 0; t < 5; ++t) CHECK(ic.transmissions[t] <= u.transmissions[t]);
  CHECK(delivery_from_string(to_string(Delivery::index_coded)) == Delivery::index_coded);
  CHECK_THROWS_AS(delivery_from_string("coded"), DomainError);
}
