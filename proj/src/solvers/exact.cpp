#include <algorithm>
#include <numeric>

#include "pliable/codec.hpp"
#include "pliable/errors.hpp"
#include "pliable/matching.hpp"
#include "pliable/solvers.hpp"

namespace pliable::solvers {

namespace {

// Exhaustive search over coding matrices modulo invertible row operations.
// Row operations preserve every decodable set, so it suffices to enumerate
// matrices in column echelon form: visiting messages in a fixed order, each
// column is either the next unit vector e_{r+1} (a new pivot) or a
// combination of e_1..e_r whose first nonzero coefficient is 1 (column
// scaling also preserves decodability).
class EchelonSearch {
 public:
  EchelonSearch(const PicInstance& inst, std::size_t L, std::uint32_t q, std::uint64_t& nodes, std::uint64_t budget)
      : inst_(inst), L_(L), field_(q), nodes_(nodes), budget_(budget), cols_(inst.m()), placed_(inst.m(), 0) {
    order_messages();
  }

  std::optional<codec::CodingScheme> run() {
    for (auto& c : cols_) c.assign(L_, 0);
    if (dfs(0, 0)) return found_;
    return std::nullopt;
  }

 private:
  void order_messages() {
    std::vector<std::size_t> clients(inst_.n());
    std::iota(clients.begin(), clients.end(), 0);
    std::stable_sort(clients.begin(), clients.end(), [&](std::size_t a, std::size_t b) {
      return inst_.requests(a).size() < inst_.requests(b).size();
    });
    std::vector<char> listed(inst_.m(), 0);
    for (auto i : clients) {
      for (auto j : inst_.requests(i)) {
        if (!listed[j]) {
          listed[j] = 1;
          order_.push_back(j);
        }
      }
    }
  }

  // Placed requested messages of `client` whose columns are independent of
  // the client's other placed columns, plus every unplaced requested message.
  MessageSet optimistic(std::size_t client) const {
    const auto& r = inst_.requests(client);
    MessageSet placed, out;
    for (auto j : r) {
      if (placed_[j]) {
        placed.push_back(j);
      } else {
        out.push_back(j);
      }
    }
    if (!placed.empty()) {
      gf::Matrix sub(L_, placed.size(), field_);
      for (std::size_t k = 0; k < placed.size(); ++k) {
        for (std::size_t l = 0; l < L_; ++l) sub.set(l, k, cols_[placed[k]][l]);
      }
      for (auto k : gf::isolated_columns(sub)) out.push_back(placed[k]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool feasible() const {
    std::vector<MessageSet> options(inst_.n());
    for (std::size_t i = 0; i < inst_.n(); ++i) {
      options[i] = optimistic(i);
      if (options[i].empty()) return false;
    }
    CapacitatedMatcher matcher(inst_.m(), std::move(options), inst_.c());
    return matcher.match_all() == inst_.n();
  }

  bool leaf() {
    gf::Matrix a(L_, inst_.m(), field_);
    for (std::size_t j = 0; j < inst_.m(); ++j) {
      for (std::size_t l = 0; l < L_; ++l) a.set(l, j, cols_[j][l]);
    }
    codec::CodingScheme scheme{std::move(a)};
    if (!codec::verify_scheme(scheme, inst_).ok()) return false;
    found_ = std::move(scheme);
    return true;
  }

  bool place(std::size_t pos, std::size_t rank_after) {
    if (++nodes_ > budget_) throw BudgetExceeded("exhaustive search exceeded its node budget");
    placed_[order_[pos]] = 1;
    bool ok = feasible() && dfs(pos + 1, rank_after);
    placed_[order_[pos]] = 0;
    return ok;
  }

  bool dfs(std::size_t pos, std::size_t r) {
    if (pos == order_.size()) return leaf();
    auto& col = cols_[order_[pos]];
    const std::uint32_t q = field_.modulus();

    if (r < L_) {
      std::fill(col.begin(), col.end(), 0);
      col[r] = 1;
      if (place(pos, r + 1)) return true;
    }
    // Combinations of the first r unit vectors, odometer order, skipping
    // those whose leading nonzero coefficient is not 1.
    std::fill(col.begin(), col.end(), 0);
    for (;;) {
      std::size_t lead = 0;
      while (lead < r && col[lead] == 0) ++lead;
      if (lead == r || col[lead] == 1) {
        if (place(pos, r)) return true;
      }
      std::size_t d = 0;
      while (d < r && col[d] == q - 1) col[d++] = 0;
      if (d == r) break;
      ++col[d];
    }
    std::fill(col.begin(), col.end(), 0);
    return false;
  }

  const PicInstance& inst_;
  std::size_t L_;
  gf::Field field_;
  std::uint64_t& nodes_;
  std::uint64_t budget_;
  std::vector<gf::Vector> cols_;
  std::vector<char> placed_;
  std::vector<std::size_t> order_;
  std::optional<codec::CodingScheme> found_;
};

}  // namespace

std::optional<SolverResult> brute_force_optimal(const PicInstance& inst, std::size_t L_max, std::uint32_t q,
                                                std::uint64_t node_budget) {
  const gf::Field field(q);
  CapacitatedMatcher any(inst.m(), inst.all_requests(), inst.c());
  if (any.match_all() != inst.n()) return std::nullopt;

  std::uint64_t nodes = 0;
  for (std::size_t L = 1; L <= L_max; ++L) {
    EchelonSearch search(inst, L, field.modulus(), nodes, node_budget);
    if (auto scheme = search.run()) {
      auto v = codec::verify_scheme(*scheme, inst);
      if (!v.ok()) throw VerificationFailure("exhaustive search returned an invalid scheme");
      return SolverResult{"brute", std::move(*scheme), std::move(*v.assignment), 0};
    }
  }
  return std::nullopt;
}

}  // namespace pliable::solvers
