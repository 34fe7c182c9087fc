#include "pliable/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "pliable/errors.hpp"

namespace pliable::stats {

void Running::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

double Running::variance() const { return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1); }

double Running::stddev() const { return std::sqrt(variance()); }

double Running::sem() const { return n_ == 0 ? 0.0 : stddev() / std::sqrt(static_cast<double>(n_)); }

double chi_square_sf(double x, std::size_t dof) {
  if (dof == 0) throw DomainError("chi-square needs at least one degree of freedom");
  if (x <= 0.0) return 1.0;
  boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, x));
}

ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts) {
  if (counts.size() < 2) throw DomainError("uniformity test needs at least two cells");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw DomainError("uniformity test needs observations");
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  ChiSquare out;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    out.statistic += d * d / expected;
  }
  out.dof = counts.size() - 1;
  out.p_value = chi_square_sf(out.statistic, out.dof);
  return out;
}

ChiSquare chi_square_independence(const std::vector<std::vector<std::uint64_t>>& table) {
  if (table.empty()) throw DomainError("empty contingency table");
  const std::size_t cols = table.front().size();
  std::vector<double> row_sum(table.size(), 0.0), col_sum(cols, 0.0);
  double total = 0.0;
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (table[r].size() != cols) throw DimensionError("ragged contingency table");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = static_cast<double>(table[r][c]);
      row_sum[r] += v;
      col_sum[c] += v;
      total += v;
    }
  }
  if (total == 0.0) throw DomainError("contingency table has no observations");
  std::size_t live_rows = 0, live_cols = 0;
  for (auto s : row_sum) live_rows += s > 0;
  for (auto s : col_sum) live_cols += s > 0;
  ChiSquare out;
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double e = row_sum[r] * col_sum[c] / total;
      if (e == 0.0) continue;
      const double d = static_cast<double>(table[r][c]) - e;
      out.statistic += d * d / e;
    }
  }
  out.dof = (live_rows > 0 ? live_rows - 1 : 0) * (live_cols > 0 ? live_cols - 1 : 0);
  out.p_value = out.dof == 0 ? 1.0 : chi_square_sf(out.statistic, out.dof);
  return out;
}

double log_binomial(double n, double k) {
  if (k < 0 || k > n) throw DomainError("binomial coefficient outside its domain");
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  __extension__ typedef unsigned __int128 wide;
  wide acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > UINT64_MAX) throw DomainError("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace pliable::stats
