#include <algorithm>
#include <fstream>

#include "pliable/errors.hpp"
#include "pliable/shuffle.hpp"

namespace pliable::shuffle {

std::vector<std::string> ShuffleConfig::violations() const {
  std::vector<std::string> out;
  if (n == 0) out.emplace_back("n >= 1");
  if (T == 0) out.emplace_back("T >= 1");
  if (outer != "recursive" && outer != "random" && outer != "cyclic") {
    out.emplace_back("outer is one of recursive, random, cyclic");
  }
  if (m1 == 0) {
    out.emplace_back("m1 >= 1");
    return out;
  }
  if (m == 0 || m % m1 != 0) out.emplace_back("m1 divides m");
  if (r < 2 || r > m1) out.emplace_back("2 <= r <= m1");
  if (r == 0 || m1 % r != 0) {
    out.emplace_back("r divides m1");
    return out;
  }
  if (r < 2) return out;
  const std::size_t pg = per_group();
  if (s == 0 || s % pg != 0) {
    out.emplace_back("m1(1-1/r) divides s");
    return out;
  }
  if (m == 0 || m % m1 != 0) return out;
  if (d1() > G()) out.emplace_back("d1 <= G");
  if ((n * d1()) % G() != 0) out.emplace_back("d2 = n*d1/G is an integer");
  return out;
}

void ShuffleConfig::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::string msg = "invalid shuffle configuration; violated:";
  for (const auto& s : v) msg += " [" + s + "]";
  throw ConfigError(msg);
}

ShuffleConfig config_from_json(const nlohmann::json& j) {
  try {
    ShuffleConfig c;
    c.m = j.at("m").get<std::size_t>();
    c.n = j.at("n").get<std::size_t>();
    c.s = j.at("s").get<std::size_t>();
    c.m1 = j.at("m1").get<std::size_t>();
    c.r = j.at("r").get<std::size_t>();
    c.T = j.value("T", std::size_t{1});
    c.seed = j.value("seed", std::uint64_t{0});
    c.outer = j.value("outer", std::string("random"));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed shuffle config: ") + e.what());
  }
}

nlohmann::json to_json(const ShuffleConfig& c) {
  return {{"m", c.m}, {"n", c.n}, {"s", c.s}, {"m1", c.m1}, {"r", c.r},
          {"T", c.T}, {"seed", c.seed}, {"outer", c.outer}};
}

ShuffleConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed shuffle config: ") + e.what());
  }
  return config_from_json(j);
}

OuterLayer::OuterLayer(std::vector<std::vector<std::uint8_t>> rows) : rows_(std::move(rows)) {
  G_ = rows_.empty() ? 0 : rows_.front().size();
  D_.assign(rows_.size(), {});
  N_.assign(G_, {});
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != G_) throw DimensionError("ragged outer-layer matrix");
    for (std::size_t g = 0; g < G_; ++g) {
      if (rows_[i][g] > 1) throw DomainError("outer-layer entries must be 0 or 1");
      if (rows_[i][g]) {
        D_[i].push_back(g);
        N_[g].push_back(i);
      }
    }
  }
}

OuterReport verify_outer(const OuterLayer& B, std::size_t expect_d1, std::size_t expect_d2) {
  OuterReport rep;
  if (B.n() == 0) return rep;
  std::vector<std::size_t> row(B.n()), col(B.G());
  for (std::size_t i = 0; i < B.n(); ++i) row[i] = B.groups_of(i).size();
  for (std::size_t g = 0; g < B.G(); ++g) col[g] = B.workers_of(g).size();
  rep.min_row = *std::min_element(row.begin(), row.end());
  rep.max_row = *std::max_element(row.begin(), row.end());
  rep.min_col = col.empty() ? 0 : *std::min_element(col.begin(), col.end());
  rep.max_col = col.empty() ? 0 : *std::max_element(col.begin(), col.end());
  rep.rows_regular = rep.min_row == rep.max_row && (expect_d1 == 0 || rep.min_row == expect_d1);
  rep.cols_regular = rep.min_col == rep.max_col && (expect_d2 == 0 || rep.min_col == expect_d2);
  rep.column_histogram.assign(rep.max_col + 1, 0);
  for (auto d : col) ++rep.column_histogram[d];

  for (std::size_t a = 0; a < B.n(); ++a) {
    for (std::size_t b = a + 1; b < B.n(); ++b) {
      std::size_t shared = 0;
      for (auto g : B.groups_of(a)) shared += B.at(b, g);
      if (shared >= 2) {
        rep.violating_pairs.emplace_back(a, b);
        rep.excess_overlap += shared - 1;
      }
    }
  }
  rep.c4_free = rep.violating_pairs.empty();
  return rep;
}

}  // namespace pliable::shuffle
