#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pliable/baselines.hpp"
#include "pliable/cli.hpp"
#include "pliable/errors.hpp"

namespace pliable::cli {

namespace {

struct Dataset {
  std::size_t dim = 0;
  std::vector<std::vector<std::vector<double>>> messages;  // message -> points (last entry is the label)
  std::vector<std::vector<double>> test;
};

std::vector<double> draw_point(Rng& rng, const std::vector<double>& w) {
  std::vector<double> x(w.size() + 1);
  double score = 0;
  do {
    score = 0;
    for (std::size_t d = 0; d < w.size(); ++d) {
      x[d] = 2 * rng.uniform() - 1;
      score += w[d] * x[d];
    }
  } while (std::abs(score) < 0.05);
  x.back() = score > 0 ? 1.0 : -1.0;
  return x;
}

// Messages are ordered by their mean score, so contiguous groups hold
// similar points and a worker that never shuffles sees a skewed sample.
Dataset make_dataset(const DemoParams& p, Rng& rng) {
  Dataset ds;
  ds.dim = p.dim;
  std::vector<double> w(p.dim);
  for (auto& v : w) v = 2 * rng.uniform() - 1;
  std::vector<std::vector<double>> points;
  for (std::size_t k = 0; k < p.cfg.m * p.points_per_message; ++k) points.push_back(draw_point(rng, w));
  auto score = [&](const std::vector<double>& x) {
    double s = 0;
    for (std::size_t d = 0; d < w.size(); ++d) s += w[d] * x[d];
    return s;
  };
  std::sort(points.begin(), points.end(), [&](const auto& a, const auto& b) { return score(a) < score(b); });
  ds.messages.resize(p.cfg.m);
  for (std::size_t k = 0; k < points.size(); ++k) ds.messages[k / p.points_per_message].push_back(points[k]);
  for (std::size_t k = 0; k < p.test_points; ++k) ds.test.push_back(draw_point(rng, w));
  return ds;
}

// Linear model: weights followed by a bias term.
double margin(const std::vector<double>& model, const std::vector<double>& x) {
  double s = model.back();
  for (std::size_t d = 0; d + 1 < model.size(); ++d) s += model[d] * x[d];
  return s;
}

double error_rate(const std::vector<double>& model, const Dataset& ds) {
  std::size_t wrong = 0;
  for (const auto& x : ds.test) wrong += (margin(model, x) >= 0 ? 1.0 : -1.0) != x.back();
  return static_cast<double>(wrong) / static_cast<double>(ds.test.size());
}

// One logistic-loss SGD pass per worker over its cached messages, then averaging.
std::vector<double> train_round(const std::vector<double>& model, const std::vector<CacheState>& caches,
                                const Dataset& ds, double lr, Rng& rng) {
  std::vector<double> sum(model.size(), 0.0);
  for (const auto& cache : caches) {
    auto local = model;
    auto held = cache.messages();
    rng.shuffle(held);
    for (auto j : held) {
      for (const auto& x : ds.messages[j]) {
        const double y = x.back();
        const double g = -y / (1 + std::exp(y * margin(local, x)));
        for (std::size_t d = 0; d + 1 < local.size(); ++d) local[d] -= lr * g * x[d];
        local.back() -= lr * g;
      }
    }
    for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += local[d];
  }
  for (auto& v : sum) v /= static_cast<double>(caches.size());
  return sum;
}

}  // namespace

std::vector<DemoRow> demo_experiment(const DemoParams& params, const std::vector<std::uint64_t>& seeds,
                                     std::ostream* csv) {
  const auto& cfg = params.cfg;
  auto checked = cfg;  // T = 0 is allowed here: only the initial model is reported
  checked.T = std::max<std::size_t>(cfg.T, 1);
  checked.validate();
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (params.dim == 0 || params.points_per_message == 0 || params.test_points == 0) {
    throw ConfigError("demo needs positive dim, points per message and test points");
  }
  for (const auto& s : params.schemes) {
    if (s != "none" && s != "pliable" && s != "random") throw ConfigError("unknown demo scheme '" + s + "'");
  }
  const auto outer = shuffle::make_outer(checked, cfg.seed);
  std::vector<DemoRow> rows;
  for (auto seed : seeds) {
    Rng data_rng(seed);
    const auto ds = make_dataset(params, data_rng);
    for (std::size_t k = 0; k < params.schemes.size(); ++k) {
      const auto& scheme = params.schemes[k];
      Rng rng(seed);
      Rng init_rng = rng.fork(1);
      Rng train_rng = rng.fork(2);
      Rng shuffle_rng = rng.fork(3);
      auto caches = shuffle::init_caches(checked, outer, init_rng);
      std::vector<double> model(params.dim + 1, 0.0);
      rows.push_back({seed, 0, scheme, error_rate(model, ds), 0});
      for (std::size_t t = 1; t <= cfg.T; ++t) {
        model = train_round(model, caches, ds, params.learning_rate, train_rng);
        std::size_t tx = 0;
        if (scheme == "pliable") {
          auto it = shuffle::shuffle_iteration(caches, checked, outer, shuffle_rng);
          tx = it.transmissions.size();
          caches = std::move(it.caches);
        } else if (scheme == "random") {
          const auto alloc = baselines::random_allocation(cfg.m, cfg.n, cfg.s, shuffle_rng);
          tx = baselines::uncoded_count(alloc, caches);
          for (std::size_t i = 0; i < cfg.n; ++i) caches[i] = CacheState::from_messages(cfg.m, alloc[i]);
        }
        rows.push_back({seed, t, scheme, error_rate(model, ds), tx});
      }
    }
  }
  if (csv) {
    *csv << kDemoHeader << '\n';
    for (const auto& r : rows) {
      std::ostringstream e;
      e << std::setprecision(10) << r.error_rate;
      *csv << r.seed << ',' << r.iter << ',' << r.scheme << ',' << e.str() << ',' << r.transmissions << '\n';
    }
  }
  return rows;
}

}  // namespace pliable::cli
