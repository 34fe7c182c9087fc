#include "pliable/model.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pliable/errors.hpp"
#include "pliable/rng.hpp"

namespace pliable {

PicInstance::PicInstance(std::size_t m, std::vector<MessageSet> requests, std::size_t c)
    : m_(m), requests_(std::move(requests)), c_(c) {
  if (m_ == 0) throw DomainError("instance needs at least one message");
  if (c_ == 0) throw DomainError("constraint c must be at least 1");
  for (std::size_t i = 0; i < requests_.size(); ++i) {
    auto& r = requests_[i];
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    if (r.empty()) throw DomainError("client " + std::to_string(i + 1) + " has an empty request set");
    if (r.back() >= m_) throw DomainError("client " + std::to_string(i + 1) + " requests a message outside [m]");
  }
}

bool PicInstance::requests_message(std::size_t client, std::size_t message) const {
  const auto& r = requests_.at(client);
  return std::binary_search(r.begin(), r.end(), message);
}

MessageSet PicInstance::side_information(std::size_t client) const {
  MessageSet s;
  const auto& r = requests_.at(client);
  std::size_t k = 0;
  for (std::size_t j = 0; j < m_; ++j) {
    if (k < r.size() && r[k] == j) {
      ++k;
    } else {
      s.push_back(j);
    }
  }
  return s;
}

BipartiteView::BipartiteView(const PicInstance& inst) : message_adj(inst.m()), client_adj(inst.all_requests()) {
  for (std::size_t i = 0; i < inst.n(); ++i) {
    for (auto j : inst.requests(i)) message_adj[j].push_back(i);
  }
}

std::size_t BipartiteView::edge_count() const {
  std::size_t e = 0;
  for (const auto& a : client_adj) e += a.size();
  return e;
}

GeneratedInstance random_instance(std::size_t m, std::size_t n, double p, std::size_t c, std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("edge probability must lie in (0, 1)");
  if (m == 0 || n == 0) throw DomainError("random instance needs m, n >= 1");
  Rng rng(seed);
  std::vector<MessageSet> requests(n);
  std::size_t resampled = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (;;) {
      requests[i].clear();
      for (std::size_t j = 0; j < m; ++j) {
        if (rng.bernoulli(p)) requests[i].push_back(j);
      }
      if (!requests[i].empty()) break;
      ++resampled;
    }
  }
  return {PicInstance(m, std::move(requests), c), resampled};
}

PicInstance two_block_instance(std::size_t n) {
  if (n < 2 || n % 2 != 0) throw DomainError("two-block instance needs an even n >= 2");
  const std::size_t h = n / 2;
  std::vector<MessageSet> requests(n);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < h; ++j) requests[i].push_back(j);
    requests[i].push_back(h + i);
  }
  for (std::size_t i = h; i < n; ++i) {
    requests[i].push_back(i - h);
    for (std::size_t j = h; j < n; ++j) requests[i].push_back(j);
  }
  return PicInstance(n, std::move(requests), 1);
}

nlohmann::json to_json(const PicInstance& inst) {
  nlohmann::json reqs = nlohmann::json::array();
  for (const auto& r : inst.all_requests()) {
    nlohmann::json row = nlohmann::json::array();
    for (auto j : r) row.push_back(j + 1);
    reqs.push_back(std::move(row));
  }
  return {{"m", inst.m()}, {"n", inst.n()}, {"c", inst.c()}, {"requests", std::move(reqs)}};
}

PicInstance instance_from_json(const nlohmann::json& j) {
  try {
    const auto m = j.at("m").get<std::size_t>();
    const auto c = j.value("c", std::size_t{1});
    std::vector<MessageSet> requests;
    for (const auto& row : j.at("requests")) {
      MessageSet r;
      for (const auto& v : row) {
        const auto idx = v.get<long long>();
        if (idx < 1) throw DomainError("message indices are 1-based");
        r.push_back(static_cast<std::size_t>(idx - 1));
      }
      requests.push_back(std::move(r));
    }
    if (j.contains("n") && j.at("n").get<std::size_t>() != requests.size()) {
      throw DomainError("field n does not match the number of request sets");
    }
    return PicInstance(m, std::move(requests), c);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed instance JSON: ") + e.what());
  }
}

PicInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open instance file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed instance JSON: ") + e.what());
  }
  return instance_from_json(j);
}

CacheState::CacheState(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

CacheState CacheState::from_string(const std::string& bits) {
  std::vector<std::uint8_t> v;
  v.reserve(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw DomainError("cache bitstring may contain only 0 and 1");
    v.push_back(ch == '1');
  }
  return CacheState(std::move(v));
}

CacheState CacheState::from_messages(std::size_t m, const MessageSet& messages) {
  CacheState z(m);
  for (auto j : messages) z.set(j);
  return z;
}

std::size_t CacheState::popcount() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

MessageSet CacheState::messages() const {
  MessageSet out;
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    if (bits_[j]) out.push_back(j);
  }
  return out;
}

std::string CacheState::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    if (bits_[j]) s[j] = '1';
  }
  return s;
}

std::size_t hamming(const CacheState& a, const CacheState& b) {
  if (a.size() != b.size()) throw DimensionError("cache states differ in length");
  std::size_t d = 0;
  const auto& x = a.bits();
  const auto& y = b.bits();
  for (std::size_t j = 0; j < x.size(); ++j) d += x[j] != y[j];
  return d;
}

void ShuffleHistory::push_iteration(std::vector<CacheState> states) {
  if (states.size() != workers_) throw DimensionError("iteration has the wrong number of workers");
  for (const auto& z : states) {
    if (z.size() != m_) throw DimensionError("cache state has the wrong length");
  }
  states_.push_back(std::move(states));
}

HammingAverage avg_hamming(const ShuffleHistory& h) {
  const std::size_t slots = h.iterations() * h.workers();
  if (slots < 2) throw DomainError("average Hamming distance needs at least two (iteration, worker) slots");
  std::vector<const CacheState*> flat;
  flat.reserve(slots);
  for (std::size_t t = 0; t < h.iterations(); ++t) {
    for (const auto& z : h.iteration(t)) flat.push_back(&z);
  }
  HammingAverage avg;
  for (std::size_t a = 0; a < flat.size(); ++a) {
    for (std::size_t b = a + 1; b < flat.size(); ++b) avg.total += hamming(*flat[a], *flat[b]);
  }
  avg.pairs = static_cast<std::uint64_t>(slots) * (slots - 1) / 2;
  return avg;
}

void write_history_csv(std::ostream& out, const ShuffleHistory& h) {
  out << "t,i,bits\n";
  for (std::size_t t = 0; t < h.iterations(); ++t) {
    for (std::size_t i = 0; i < h.workers(); ++i) {
      out << t + 1 << ',' << i + 1 << ',' << h.at(t, i).to_string() << '\n';
    }
  }
}

ShuffleHistory read_history_csv(std::istream& in) {
  std::string line;
  struct Row {
    std::size_t t, i;
    CacheState z;
  };
  std::vector<Row> rows;
  std::size_t max_t = 0, max_i = 0, m = 0;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("t,", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    std::stringstream ss(line);
    std::string ts, is, bits;
    if (!std::getline(ss, ts, ',') || !std::getline(ss, is, ',') || !std::getline(ss, bits)) {
      throw DomainError("malformed history row: " + line);
    }
    Row r{std::stoul(ts), std::stoul(is), CacheState::from_string(bits)};
    if (r.t == 0 || r.i == 0) throw DomainError("history indices are 1-based");
    if (m == 0) m = r.z.size();
    if (r.z.size() != m) throw DimensionError("history rows differ in length");
    max_t = std::max(max_t, r.t);
    max_i = std::max(max_i, r.i);
    rows.push_back(std::move(r));
  }
  if (rows.size() != max_t * max_i) throw DomainError("history is missing (t, i) rows");
  std::vector<std::vector<CacheState>> grid(max_t, std::vector<CacheState>(max_i));
  for (auto& r : rows) grid[r.t - 1][r.i - 1] = std::move(r.z);
  ShuffleHistory h(max_i, m);
  for (auto& it : grid) h.push_iteration(std::move(it));
  return h;
}

}  // namespace pliable
