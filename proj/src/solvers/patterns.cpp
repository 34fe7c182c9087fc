#include <algorithm>
#include <bit>
#include <set>

#include "pliable/errors.hpp"
#include "pliable/solvers.hpp"

namespace pliable::solvers {

namespace {

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : w_((n + 63) / 64, 0) {}

  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { w_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  std::size_t count_and(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < w_.size(); ++k) c += static_cast<std::size_t>(std::popcount(w_[k] & o.w_[k]));
    return c;
  }
  void and_not(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
  }
  template <typename F>
  void for_each_and(const Bits& o, F f) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t x = w_[k] & o.w_[k];
      while (x) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
  }
  template <typename F>
  void for_each(F f) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t x = w_[k];
      while (x) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> w_;
};

class PatternSearcher {
 public:
  PatternSearcher(const BipartiteView& view, std::size_t k, std::size_t c, std::uint64_t budget,
                  const std::vector<std::uint64_t>* tie_rank)
      : k_(k), c_(c), budget_(budget), tie_(tie_rank), msg_(view.m(), Bits(view.n())), cli_(view.n(), Bits(view.m())) {
    for (std::size_t j = 0; j < view.m(); ++j) {
      for (auto i : view.message_adj[j]) {
        msg_[j].set(i);
        cli_[i].set(j);
      }
    }
  }

  PatternSearch run(Bits alive, Bits allowed) {
    PatternSearch out;
    try {
      if (search(alive, allowed)) {
        KPattern p;
        std::vector<std::size_t> idx(chosen_.size());
        for (std::size_t s = 0; s < idx.size(); ++s) idx[s] = s;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return chosen_[a] < chosen_[b]; });
        for (auto s : idx) {
          p.messages.push_back(chosen_[s]);
          auto leaves = leaves_[s];
          std::sort(leaves.begin(), leaves.end());
          p.leaves.push_back(std::move(leaves));
        }
        out.pattern = std::move(p);
      }
    } catch (const BudgetExceeded&) {
      out.budget_exhausted = true;
    }
    out.nodes = nodes_;
    return out;
  }

 private:
  struct Candidate {
    std::size_t degree;
    std::uint64_t tie;
    std::size_t message;
    bool operator<(const Candidate& o) const {
      if (degree != o.degree) return degree < o.degree;
      if (tie != o.tie) return tie < o.tie;
      return message < o.message;
    }
  };

  bool search(const Bits& alive, Bits allowed) {
    const std::size_t need = k_ - chosen_.size();
    if (need == 0) return true;
    if (alive.count() < need * c_) return false;

    std::vector<Candidate> cands;
    allowed.for_each([&](std::size_t j) {
      const std::size_t d = msg_[j].count_and(alive);
      if (d >= c_) cands.push_back({d, tie_ ? (*tie_)[j] : 0, j});
    });
    std::sort(cands.begin(), cands.end());

    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
      // Later siblings never use messages already explored here, so at
      // least `need` candidates must remain from this position.
      if (cands.size() - ci < need) return false;
      const std::size_t j = cands[ci].message;

      std::vector<std::pair<std::size_t, std::size_t>> leaves;
      msg_[j].for_each_and(alive, [&](std::size_t i) { leaves.emplace_back(cli_[i].count_and(allowed), i); });
      std::sort(leaves.begin(), leaves.end());

      Bits next_alive = alive;
      next_alive.and_not(msg_[j]);

      // Enumerate c-subsets of the eligible leaves in lexicographic order.
      std::vector<std::size_t> pick(c_);
      for (std::size_t t = 0; t < c_; ++t) pick[t] = t;
      for (;;) {
        if (++nodes_ > budget_) throw BudgetExceeded("pattern search budget exhausted");
        Bits next_allowed = allowed;
        next_allowed.reset(j);
        std::vector<std::size_t> chosen_leaves;
        for (auto t : pick) {
          const std::size_t i = leaves[t].second;
          chosen_leaves.push_back(i);
          next_allowed.and_not(cli_[i]);
        }
        chosen_.push_back(j);
        leaves_.push_back(std::move(chosen_leaves));
        if (search(next_alive, next_allowed)) return true;
        chosen_.pop_back();
        leaves_.pop_back();

        std::size_t t = c_;
        while (t > 0 && pick[t - 1] == leaves.size() - c_ + (t - 1)) --t;
        if (t == 0) break;
        ++pick[t - 1];
        for (std::size_t u = t; u < c_; ++u) pick[u] = pick[u - 1] + 1;
      }
      allowed.reset(j);
    }
    return false;
  }

  std::size_t k_;
  std::size_t c_;
  std::uint64_t budget_;
  const std::vector<std::uint64_t>* tie_;
  std::uint64_t nodes_ = 0;
  std::vector<Bits> msg_;
  std::vector<Bits> cli_;
  std::vector<std::size_t> chosen_;
  std::vector<std::vector<std::size_t>> leaves_;
};

}  // namespace

std::vector<std::size_t> KPattern::clients() const {
  std::vector<std::size_t> out;
  for (const auto& l : leaves) out.insert(out.end(), l.begin(), l.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool is_k_pattern(const BipartiteView& view, const KPattern& pattern, std::size_t c, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (pattern.leaves.size() != pattern.messages.size()) return fail("leaf lists do not match messages");
  std::set<std::size_t> msgs(pattern.messages.begin(), pattern.messages.end());
  if (msgs.size() != pattern.messages.size()) return fail("repeated message");
  for (auto j : msgs) {
    if (j >= view.m()) return fail("message out of range");
  }
  const auto clients = pattern.clients();
  if (std::adjacent_find(clients.begin(), clients.end()) != clients.end()) return fail("repeated client");
  if (clients.size() != pattern.k() * c) return fail("pattern must have kc clients");
  for (std::size_t s = 0; s < pattern.k(); ++s) {
    if (pattern.leaves[s].size() != c) return fail("each star needs exactly c leaves");
    for (auto i : pattern.leaves[s]) {
      if (i >= view.n()) return fail("client out of range");
      std::size_t seen = 0;
      bool own = false;
      for (auto j : view.client_adj[i]) {
        if (msgs.count(j)) {
          ++seen;
          own = own || j == pattern.messages[s];
        }
      }
      if (!own) return fail("leaf not adjacent to its centre");
      if (seen != 1) return fail("leaf adjacent to more than one pattern message");
    }
  }
  return true;
}

PatternSearch find_k_pattern(const BipartiteView& view, std::size_t k, std::size_t c,
                             const std::vector<std::size_t>& unsatisfied, const MessageSet& unused,
                             std::uint64_t budget, const std::vector<std::uint64_t>* tie_rank) {
  if (k == 0) throw DomainError("pattern size k must be at least 1");
  if (c == 0) throw DomainError("c must be at least 1");
  if (tie_rank && tie_rank->size() != view.m()) throw DimensionError("tie ranks must cover every message");
  Bits alive(view.n()), allowed(view.m());
  for (auto i : unsatisfied) {
    if (i >= view.n()) throw DimensionError("client out of range");
    alive.set(i);
  }
  for (auto j : unused) {
    if (j >= view.m()) throw DimensionError("message out of range");
    allowed.set(j);
  }
  PatternSearcher searcher(view, k, c, budget, tie_rank);
  return searcher.run(std::move(alive), std::move(allowed));
}

}  // namespace pliable::solvers
