#include <algorithm>
#include <tuple>

#include "common.hpp"
#include "pliable/errors.hpp"
#include "pliable/solvers.hpp"

namespace pliable::solvers {

namespace {

constexpr std::size_t kMaxStarts = 1024;

struct Colour {
  std::vector<std::size_t> centres;
  std::vector<std::vector<std::size_t>> leaves;
  std::size_t served = 0;
};

// Builds one induced star forest over the unserved clients flagged in
// `target`. Centres need residual capacity; a new centre may not touch an
// existing leaf, and its leaves may not touch an existing centre.
class ColourBuilder {
 public:
  ColourBuilder(const detail::SchemeBuilder& b, const BipartiteView& view, const std::vector<char>& target)
      : b_(b), view_(view), target_(target), options_(view.n(), 0) {
    for (std::size_t i = 0; i < view.n(); ++i) {
      if (!live_client(i)) continue;
      for (auto j : view.client_adj[i]) options_[i] += b.residual(j) > 0;
    }
  }

  Colour grow(std::size_t start_message, std::size_t start_client) {
    Colour col;
    alive_.assign(view_.n(), 0);
    for (std::size_t i = 0; i < view_.n(); ++i) alive_[i] = live_client(i);
    blocked_.assign(view_.m(), 0);

    if (start_message != kUnmatched) add_star(col, start_message, start_client);
    for (;;) {
      std::size_t best = kUnmatched, best_gain = 0, best_killed = 0;
      for (std::size_t j = 0; j < view_.m(); ++j) {
        if (blocked_[j] || b_.residual(j) == 0) continue;
        std::size_t eligible = 0;
        for (auto i : view_.message_adj[j]) eligible += alive_[i];
        const std::size_t gain = std::min(b_.residual(j), eligible);
        if (gain == 0) continue;
        const std::size_t killed = eligible - gain;
        if (gain > best_gain || (gain == best_gain && killed < best_killed)) {
          best = j;
          best_gain = gain;
          best_killed = killed;
        }
      }
      if (best == kUnmatched) break;
      add_star(col, best, kUnmatched);
    }
    return col;
  }

 private:
  bool live_client(std::size_t i) const { return target_[i] && !b_.served(i); }

  void add_star(Colour& col, std::size_t j, std::size_t forced) {
    std::vector<std::size_t> eligible;
    for (auto i : view_.message_adj[j]) {
      if (alive_[i] && i != forced) eligible.push_back(i);
    }
    std::sort(eligible.begin(), eligible.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(options_[a], a) < std::tie(options_[b], b);
    });
    std::vector<std::size_t> leaves;
    if (forced != kUnmatched) leaves.push_back(forced);
    for (auto i : eligible) {
      if (leaves.size() >= b_.residual(j)) break;
      leaves.push_back(i);
    }
    for (auto i : view_.message_adj[j]) alive_[i] = 0;
    blocked_[j] = 1;
    for (auto i : leaves) {
      for (auto jj : view_.client_adj[i]) blocked_[jj] = 1;
    }
    col.served += leaves.size();
    col.centres.push_back(j);
    col.leaves.push_back(std::move(leaves));
  }

  const detail::SchemeBuilder& b_;
  const BipartiteView& view_;
  const std::vector<char>& target_;
  std::vector<std::size_t> options_;
  std::vector<char> alive_;
  std::vector<char> blocked_;
};

Colour best_colour(const detail::SchemeBuilder& b, const BipartiteView& view, const std::vector<char>& target) {
  ColourBuilder builder(b, view, target);
  // Start edges: messages by descending live degree, clients ascending.
  std::vector<std::pair<std::size_t, std::size_t>> by_degree;
  for (std::size_t j = 0; j < view.m(); ++j) {
    if (b.residual(j) == 0) continue;
    std::size_t d = 0;
    for (auto i : view.message_adj[j]) d += target[i] && !b.served(i);
    if (d > 0) by_degree.emplace_back(d, j);
  }
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });

  Colour best = builder.grow(kUnmatched, kUnmatched);
  std::size_t starts = 0;
  for (const auto& [d, j] : by_degree) {
    for (auto i : view.message_adj[j]) {
      if (!target[i] || b.served(i)) continue;
      if (starts++ >= kMaxStarts) return best;
      auto col = builder.grow(j, i);
      if (col.served > best.served) best = std::move(col);
    }
  }
  return best;
}

}  // namespace

void detail::star_forest_colours(SchemeBuilder& b, const std::vector<std::size_t>& clients,
                                 std::vector<TransmissionRecord>* log) {
  const BipartiteView view(b.instance());
  std::vector<char> target(b.instance().n(), 0);
  for (auto i : clients) target[i] = 1;
  auto pending = [&] {
    for (auto i : clients) {
      if (!b.served(i)) return i;
    }
    return kUnmatched;
  };

  for (std::size_t first = pending(); first != kUnmatched; first = pending()) {
    const Colour col = best_colour(b, view, target);
    std::size_t served = 0;
    if (col.served > 0) {
      b.emit(col.centres);
      for (std::size_t s = 0; s < col.centres.size(); ++s) {
        for (auto i : col.leaves[s]) served += b.commit(i, col.centres[s]) ? 1 : 0;
      }
      if (served == 0) b.retract();
    }
    if (served > 0) {
      if (log) log->push_back({"star_forest", col.centres.size(), served});
    } else {
      served = b.serve_fallback(first);
      if (log) log->push_back({"fallback", 1, served});
    }
  }
}

SolverResult star_forest_partition(const PicInstance& inst) {
  detail::SchemeBuilder b(inst);
  detail::star_forest_colours(b, b.unserved(), nullptr);
  return b.finish("star_forest", 0);
}

TwoStepResult two_step_scheme(const PicInstance& inst, std::uint64_t seed) {
  detail::SchemeBuilder b(inst);
  const BipartiteView view(inst);
  TwoStepResult out;
  const std::size_t c = inst.c();
  const std::size_t uncoded = (inst.n() + c - 1) / c;

  for (std::size_t t = 0; t < uncoded && b.remaining() > 0; ++t) {
    const std::size_t served = detail::uncoded_send(b, view);
    out.log.push_back({"uncoded", 1, served});
    ++out.step1;
  }

  auto rest = b.unserved();
  std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b2) {
    return inst.requests(a).size() < inst.requests(b2).size();
  });
  for (std::size_t g = 0; g < rest.size(); g += c) {
    const std::vector<std::size_t> group(rest.begin() + static_cast<std::ptrdiff_t>(g),
                                         rest.begin() + static_cast<std::ptrdiff_t>(std::min(rest.size(), g + c)));
    const std::size_t before = b.transmissions();
    detail::star_forest_colours(b, group, &out.log);
    out.step2 += b.transmissions() - before;
  }

  auto res = b.finish("two_step", seed);
  static_cast<SolverResult&>(out) = std::move(res);
  return out;
}

}  // namespace pliable::solvers
