#include "pliable/codec.hpp"

#include <algorithm>
#include <bit>

#include "pliable/errors.hpp"
#include "pliable/matching.hpp"

namespace pliable::codec {

CodingScheme CodingScheme::from_rows(const std::vector<gf::Vector>& rows, std::size_t m, std::uint32_t q) {
  return {gf::Matrix::from_rows(rows, m, gf::Field(q))};
}

CodingScheme CodingScheme::from_supports(const std::vector<MessageSet>& supports, std::size_t m, std::uint32_t q) {
  gf::Matrix a(supports.size(), m, gf::Field(q));
  for (std::size_t l = 0; l < supports.size(); ++l) {
    for (auto j : supports[l]) {
      if (j >= m) throw DimensionError("transmission mentions a message outside [m]");
      a.set(l, j, 1);
    }
  }
  return {std::move(a)};
}

std::vector<MessageSet> CodingScheme::supports() const {
  std::vector<MessageSet> out(L());
  for (std::size_t l = 0; l < L(); ++l) {
    for (std::size_t j = 0; j < m(); ++j) {
      if (A.at(l, j) != 0) out[l].push_back(j);
    }
  }
  return out;
}

gf::Vector encode(const CodingScheme& scheme, std::span<const std::uint32_t> b) {
  return gf::multiply(scheme.A, b);
}

namespace {

void check_columns(const CodingScheme& scheme, const PicInstance& inst) {
  if (scheme.m() != inst.m()) throw DimensionError("scheme column count differs from the instance's m");
}

// GF(2) coloop test on packed rows: row l holds bit k for column R[k].
MessageSet decodable_gf2(const CodingScheme& scheme, const MessageSet& r) {
  const std::size_t width = r.size();
  const std::size_t words = (width + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(scheme.L());
  for (std::size_t l = 0; l < scheme.L(); ++l) {
    std::vector<std::uint64_t> row(words, 0);
    bool any = false;
    for (std::size_t k = 0; k < width; ++k) {
      if (scheme.A.at(l, r[k]) != 0) {
        row[k / 64] |= std::uint64_t{1} << (k % 64);
        any = true;
      }
    }
    if (any) rows.push_back(std::move(row));
  }

  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < width && lead < rows.size(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t p = lead;
    while (p < rows.size() && !(rows[p][w] & bit)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[lead], rows[p]);
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == lead || !(rows[q][w] & bit)) continue;
      for (std::size_t k = w; k < words; ++k) rows[q][k] ^= rows[lead][k];
    }
    pivots.push_back(c);
    ++lead;
  }

  MessageSet out;
  for (std::size_t p = 0; p < pivots.size(); ++p) {
    std::size_t ones = 0;
    for (auto word : rows[p]) ones += static_cast<std::size_t>(std::popcount(word));
    if (ones == 1) out.push_back(r[pivots[p]]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MessageSet decodable_general(const CodingScheme& scheme, const MessageSet& r) {
  const auto sub = scheme.A.select_columns(r);
  MessageSet out;
  for (auto k : gf::isolated_columns(sub)) out.push_back(r[k]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

MessageSet decodable_set(const CodingScheme& scheme, const PicInstance& inst, std::size_t client) {
  check_columns(scheme, inst);
  const auto& r = inst.requests(client);
  return scheme.q() == 2 ? decodable_gf2(scheme, r) : decodable_general(scheme, r);
}

std::vector<MessageSet> decodable_sets(const CodingScheme& scheme, const PicInstance& inst) {
  check_columns(scheme, inst);
  std::vector<MessageSet> out(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) out[i] = decodable_set(scheme, inst, i);
  return out;
}

Verification verify_scheme(const CodingScheme& scheme, const PicInstance& inst) {
  Verification v;
  v.decodable = decodable_sets(scheme, inst);
  CapacitatedMatcher matcher(inst.m(), v.decodable, inst.c());
  matcher.match_all();
  if (matcher.complete()) {
    v.assignment = Assignment{matcher.assignment()};
  } else {
    v.unmatched = matcher.unmatched();
  }
  return v;
}

Decoded client_decode(const CodingScheme& scheme, std::span<const std::uint32_t> x, const PicInstance& inst,
                      std::size_t client, std::span<const std::uint32_t> known, const Assignment* assignment) {
  check_columns(scheme, inst);
  if (x.size() != scheme.L()) throw DimensionError("transmission vector length differs from L");
  if (known.size() != inst.m()) throw DimensionError("known-values vector must have length m");

  const auto dec = decodable_set(scheme, inst, client);
  if (dec.empty()) throw NotDetermined("client " + std::to_string(client + 1) + " cannot decode any message");
  std::size_t target = dec.front();
  if (assignment != nullptr) {
    target = assignment->assigned.at(client);
    if (!std::binary_search(dec.begin(), dec.end(), target)) {
      throw NotDetermined("assigned message is not decodable by this client");
    }
  }

  const auto& f = scheme.A.field();
  const auto& r = inst.requests(client);
  // x^{(i)}_l = x_l - sum over side information of a_lj b_j.
  gf::Vector residual(x.begin(), x.end());
  for (std::size_t l = 0; l < scheme.L(); ++l) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < inst.m(); ++j) {
      if (k < r.size() && r[k] == j) {
        ++k;
        continue;
      }
      if (known[j] >= f.modulus()) throw DomainError("known message value outside the field");
      residual[l] = f.sub(residual[l], f.mul(scheme.A.at(l, j), known[j]));
    }
  }
  const auto sub = scheme.A.select_columns(r);
  const auto pos = static_cast<std::size_t>(std::lower_bound(r.begin(), r.end(), target) - r.begin());
  return {target, gf::solve_for(sub, residual, pos)};
}

nlohmann::json to_json(const CodingScheme& scheme) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t l = 0; l < scheme.L(); ++l) rows.push_back(scheme.A.row(l));
  return {{"q", scheme.q()}, {"L", scheme.L()}, {"rows", std::move(rows)}};
}

CodingScheme scheme_from_json(const nlohmann::json& j) {
  try {
    const auto q = j.value("q", std::uint32_t{2});
    const auto rows = j.at("rows").get<std::vector<gf::Vector>>();
    if (rows.empty()) throw DomainError("scheme needs at least one row");
    if (j.contains("L") && j.at("L").get<std::size_t>() != rows.size()) {
      throw DomainError("field L does not match the number of rows");
    }
    return CodingScheme::from_rows(rows, rows.front().size(), q);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed scheme JSON: ") + e.what());
  }
}

}  // namespace pliable::codec
