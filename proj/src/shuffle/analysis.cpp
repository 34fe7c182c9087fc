#include <bit>
#include <cmath>

#include "pliable/errors.hpp"
#include "pliable/shuffle.hpp"
#include "pliable/stats.hpp"

namespace pliable::shuffle {

namespace {

constexpr std::size_t kMinRuns = 1000;

// Maps each weight-w mask over m1 bits to a dense state index.
class StateIndex {
 public:
  StateIndex(std::size_t m1, std::size_t w) : index_(std::size_t{1} << m1, kNone) {
    for (std::size_t mask = 0; mask < index_.size(); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) == w) index_[mask] = count_++;
    }
  }
  std::size_t count() const { return count_; }
  std::size_t operator()(std::size_t mask) const {
    if (index_[mask] == kNone) throw DomainError("truncated cache state has the wrong weight");
    return index_[mask];
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index_;
  std::size_t count_ = 0;
};

std::size_t truncated(const CacheState& z, const ShuffleConfig& cfg, std::size_t g) {
  std::size_t mask = 0;
  for (std::size_t k = 0; k < cfg.m1; ++k) {
    if (z.test(group_begin(cfg, g) + k)) mask |= std::size_t{1} << k;
  }
  return mask;
}

}  // namespace

RandomnessReport randomness_check(const std::vector<ShuffleRun>& runs, const ShuffleConfig& cfg,
                                  const OuterLayer& outer, const RandomnessOptions& options) {
  if (runs.size() < kMinRuns) {
    throw DomainError("randomness check needs at least " + std::to_string(kMinRuns) + " independent runs, got " +
                      std::to_string(runs.size()));
  }
  if (cfg.m1 > 20) throw DomainError("truncated-state statistics support m1 <= 20");
  if (outer.groups_of(0).empty()) throw DomainError("worker 1 owns no group");

  RandomnessReport rep;
  rep.runs = runs.size();
  rep.worker = 0;
  rep.group = outer.groups_of(0).front();
  rep.partner = rep.worker;
  for (auto i : outer.workers_of(rep.group)) {
    if (i != rep.worker) {
      rep.partner = i;
      break;
    }
  }
  const StateIndex index(cfg.m1, cfg.per_group());
  rep.states = index.count();

  for (auto t : options.timestamps) {
    if (t > cfg.T) continue;
    std::vector<std::uint64_t> counts(rep.states, 0);
    std::vector<std::vector<std::uint64_t>> joint(rep.states, std::vector<std::uint64_t>(rep.states, 0));
    std::vector<double> sx(cfg.m1, 0), sy(cfg.m1, 0), sxx(cfg.m1, 0), syy(cfg.m1, 0), sxy(cfg.m1, 0);
    for (const auto& run : runs) {
      const std::size_t a = truncated(run.state_after(t, rep.worker), cfg, rep.group);
      const std::size_t b = truncated(run.state_after(t, rep.partner), cfg, rep.group);
      ++counts[index(a)];
      ++joint[index(a)][index(b)];
      for (std::size_t k = 0; k < cfg.m1; ++k) {
        const double x = (a >> k) & 1U, y = (b >> k) & 1U;
        sx[k] += x;
        sy[k] += y;
        sxx[k] += x * x;
        syy[k] += y * y;
        sxy[k] += x * y;
      }
    }
    const auto u = stats::chi_square_uniform(counts);
    rep.uniformity.push_back({t, u.statistic, u.dof, u.p_value, u.p_value >= options.alpha});

    if (rep.partner != rep.worker) {
      const auto ind = stats::chi_square_independence(joint);
      const double nr = static_cast<double>(runs.size());
      double corr = 0.0;
      for (std::size_t k = 0; k < cfg.m1; ++k) {
        const double cov = sxy[k] / nr - (sx[k] / nr) * (sy[k] / nr);
        const double vx = sxx[k] / nr - (sx[k] / nr) * (sx[k] / nr);
        const double vy = syy[k] / nr - (sy[k] / nr) * (sy[k] / nr);
        corr += (vx > 0 && vy > 0) ? cov / std::sqrt(vx * vy) : 0.0;
      }
      rep.independence.push_back(
          {t, ind.statistic, ind.dof, ind.p_value, corr / static_cast<double>(cfg.m1), ind.p_value >= options.alpha});
    }
  }

  std::vector<std::vector<std::uint64_t>> moves(rep.states, std::vector<std::uint64_t>(rep.states, 0));
  for (const auto& run : runs) {
    for (std::size_t t = 0; t < cfg.T; ++t) {
      const auto a = index(truncated(run.state_after(t, rep.worker), cfg, rep.group));
      const auto b = index(truncated(run.state_after(t + 1, rep.worker), cfg, rep.group));
      ++moves[a][b];
    }
  }
  for (std::size_t a = 0; a < rep.states; ++a) {
    for (std::size_t b = a + 1; b < rep.states; ++b) {
      const auto f = moves[a][b], w = moves[b][a];
      if (f + w == 0) continue;
      const double diff = std::abs(static_cast<double>(f) - static_cast<double>(w));
      const bool within = diff <= 3.0 * std::sqrt(static_cast<double>(f + w));
      rep.reversibility.push_back({a, b, f, w, within});
      rep.reversible = rep.reversible && within;
    }
  }
  return rep;
}

namespace {

void check_arity(std::size_t m1, std::size_t r) {
  if (r < 1 || r > m1 || m1 % r != 0) throw DomainError("arity r must divide m1 and lie in [1, m1]");
}

}  // namespace

double decode_probability_estimate(std::size_t m1, std::size_t r, std::size_t trials, std::uint64_t seed) {
  check_arity(m1, r);
  if (trials == 0) throw DomainError("need at least one trial");
  const std::size_t cached = m1 - m1 / r;  // messages 0..cached-1 are held
  Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t outside = 0;
    for (auto j : rng.sample(m1, r)) outside += j >= cached;
    hits += outside == 1;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

double decode_probability_exact(std::size_t m1, std::size_t r) {
  check_arity(m1, r);
  const double u = static_cast<double>(m1 / r), w = static_cast<double>(m1 - m1 / r);
  if (r - 1 > m1 - m1 / r) return 0.0;
  return u * std::exp(stats::log_binomial(w, static_cast<double>(r - 1)) -
                      stats::log_binomial(static_cast<double>(m1), static_cast<double>(r)));
}

}  // namespace pliable::shuffle
