#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "pliable/gf.hpp"
#include "pliable/model.hpp"

namespace pliable::codec {

/// L x m coding matrix A; transmission l is x_l = sum_j A[l][j] b_j.
struct CodingScheme {
  gf::Matrix A;

  std::size_t L() const { return A.rows(); }
  std::size_t m() const { return A.cols(); }
  std::uint32_t q() const { return A.field().modulus(); }

  static CodingScheme from_rows(const std::vector<gf::Vector>& rows, std::size_t m, std::uint32_t q = 2);
  /// One coefficient-1 sum per support set.
  static CodingScheme from_supports(const std::vector<MessageSet>& supports, std::size_t m, std::uint32_t q = 2);

  /// Messages with a nonzero coefficient in each row.
  std::vector<MessageSet> supports() const;
};

/// assigned[i] = message client i decodes and keeps.
struct Assignment {
  std::vector<std::size_t> assigned;
  bool operator==(const Assignment&) const = default;
};

struct Verification {
  std::optional<Assignment> assignment;  // set on success
  std::vector<std::size_t> unmatched;    // clients left without a message on failure
  std::vector<MessageSet> decodable;     // per-client decodable sets

  bool ok() const { return assignment.has_value(); }
  explicit operator bool() const { return ok(); }
};

gf::Vector encode(const CodingScheme& scheme, std::span<const std::uint32_t> b);

/// { j in R_i : column a_j is outside the span of the other R_i columns }.
MessageSet decodable_set(const CodingScheme& scheme, const PicInstance& inst, std::size_t client);

/// decodable_set for every client; uses packed bit arithmetic when q = 2.
std::vector<MessageSet> decodable_sets(const CodingScheme& scheme, const PicInstance& inst);

/// Decides whether every client can be given a decodable message with no
/// message used by more than c clients.
Verification verify_scheme(const CodingScheme& scheme, const PicInstance& inst);

struct Decoded {
  std::size_t message;
  std::uint32_t value;
};

/// Client-side decoding. `known` has length m; only the client's side
/// information entries are read. Decodes the assigned message when an
/// assignment is given, else the smallest decodable one.
Decoded client_decode(const CodingScheme& scheme, std::span<const std::uint32_t> x, const PicInstance& inst,
                      std::size_t client, std::span<const std::uint32_t> known,
                      const Assignment* assignment = nullptr);

nlohmann::json to_json(const CodingScheme& scheme);
CodingScheme scheme_from_json(const nlohmann::json& j);

}  // namespace pliable::codec
