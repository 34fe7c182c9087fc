#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pliable::stats {

/// Welford accumulator.
class Running {
 public:
  void add(double x);
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance (0 for fewer than two samples).
  double variance() const;
  double stddev() const;
  /// Standard error of the mean.
  double sem() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

/// Upper tail P(X >= x) for a chi-square variable with `dof` degrees of freedom.
double chi_square_sf(double x, std::size_t dof);

/// Goodness of fit of `counts` against the uniform distribution over its cells.
ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts);

/// Pearson independence test on an r x c contingency table. Rows and
/// columns with zero marginals are dropped before counting dof.
ChiSquare chi_square_independence(const std::vector<std::vector<std::uint64_t>>& table);

/// ln C(n, k) via lgamma.
double log_binomial(double n, double k);

/// Exact C(n, k) for small arguments (throws on overflow).
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace pliable::stats
