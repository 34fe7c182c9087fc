#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace pliable {

using MessageSet = std::vector<std::size_t>;  // sorted, 0-based message indices

/// A c-constrained pliable index coding instance.
///
/// Client i is satisfied by decoding any one message of its request set R_i;
/// every other message is side information. At most c clients may decode
/// and keep the same message. Indices are 0-based in memory and 1-based in
/// the JSON interchange format.
class PicInstance {
 public:
  /// Validates: m >= 1, c >= 1, every R_i non-empty and within [0, m).
  /// Request sets are sorted and de-duplicated.
  PicInstance(std::size_t m, std::vector<MessageSet> requests, std::size_t c);

  std::size_t m() const { return m_; }
  std::size_t n() const { return requests_.size(); }
  std::size_t c() const { return c_; }

  const MessageSet& requests(std::size_t client) const { return requests_.at(client); }
  const std::vector<MessageSet>& all_requests() const { return requests_; }
  bool requests_message(std::size_t client, std::size_t message) const;

  /// S_i = [m] \ R_i, derived on demand.
  MessageSet side_information(std::size_t client) const;

  PicInstance with_c(std::size_t c) const { return PicInstance(m_, requests_, c); }

  bool operator==(const PicInstance&) const = default;

 private:
  std::size_t m_;
  std::vector<MessageSet> requests_;
  std::size_t c_;
};

/// Adjacency lists of the client/message bipartite graph (edge = request).
struct BipartiteView {
  explicit BipartiteView(const PicInstance& inst);

  std::size_t m() const { return message_adj.size(); }
  std::size_t n() const { return client_adj.size(); }
  std::size_t edge_count() const;

  std::vector<std::vector<std::size_t>> message_adj;  // message -> requesting clients
  std::vector<std::vector<std::size_t>> client_adj;   // client -> requested messages
};

struct GeneratedInstance {
  PicInstance instance;
  std::size_t resampled_clients = 0;
};

/// B(m, n, p): each (client, message) request present independently with
/// probability p. Clients that come out empty are redrawn.
GeneratedInstance random_instance(std::size_t m, std::size_t n, double p, std::size_t c, std::uint64_t seed);

/// The n-message, n-client instance where two coded transmissions suffice
/// at c = 1 while index coding needs n/2. Requires even n >= 2.
PicInstance two_block_instance(std::size_t n);

nlohmann::json to_json(const PicInstance& inst);
PicInstance instance_from_json(const nlohmann::json& j);
PicInstance load_instance(const std::string& path);

/// Indicator of a worker's cache: bit j set iff message j is cached.
class CacheState {
 public:
  CacheState() = default;
  explicit CacheState(std::size_t m) : bits_(m, 0) {}
  explicit CacheState(std::vector<std::uint8_t> bits);
  static CacheState from_string(const std::string& bits);
  static CacheState from_messages(std::size_t m, const MessageSet& messages);

  std::size_t size() const { return bits_.size(); }
  bool test(std::size_t j) const { return bits_[j] != 0; }
  void set(std::size_t j, bool v = true) { bits_[j] = v ? 1 : 0; }
  std::size_t popcount() const;
  MessageSet messages() const;
  std::string to_string() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const CacheState&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Number of positions where the two indicators differ.
std::size_t hamming(const CacheState& a, const CacheState& b);

/// Cache states indexed by (iteration, worker).
class ShuffleHistory {
 public:
  ShuffleHistory(std::size_t workers, std::size_t m) : workers_(workers), m_(m) {}

  void push_iteration(std::vector<CacheState> states);

  std::size_t iterations() const { return states_.size(); }
  std::size_t workers() const { return workers_; }
  std::size_t m() const { return m_; }
  const CacheState& at(std::size_t t, std::size_t i) const { return states_.at(t).at(i); }
  const std::vector<CacheState>& iteration(std::size_t t) const { return states_.at(t); }

 private:
  std::size_t workers_;
  std::size_t m_;
  std::vector<std::vector<CacheState>> states_;
};

/// Exact pair-average: total / pairs.
struct HammingAverage {
  std::uint64_t total = 0;
  std::uint64_t pairs = 0;
  double value() const { return pairs == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(pairs); }
};

/// Mean Hamming distance over all C(Tn, 2) unordered pairs of distinct
/// (iteration, worker) slots. Throws DomainError when Tn < 2.
HammingAverage avg_hamming(const ShuffleHistory& h);

void write_history_csv(std::ostream& out, const ShuffleHistory& h);
ShuffleHistory read_history_csv(std::istream& in);

}  // namespace pliable
