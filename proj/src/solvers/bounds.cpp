#include <algorithm>
#include <cmath>
#include <limits>

#include "pliable/errors.hpp"
#include "pliable/solvers.hpp"
#include "pliable/stats.hpp"

namespace pliable::solvers {

double expected_patterns(std::size_t m, std::size_t n, double p, std::size_t c, std::size_t k) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("edge probability must lie in (0, 1)");
  if (c == 0) throw DomainError("c must be at least 1");
  if (k > m) throw DomainError("pattern size k exceeds the message count");
  if (k * c > n) throw DomainError("pattern needs kc <= n clients");
  if (k == 0) return 0.0;
  const double kd = static_cast<double>(k);
  const double cd = static_cast<double>(c);
  const double kc = kd * cd;
  const double multinomial = std::lgamma(kc + 1.0) - kd * std::lgamma(cd + 1.0);
  return stats::log_binomial(static_cast<double>(m), kd) + stats::log_binomial(static_cast<double>(n), kc) +
         multinomial + kc * std::log(p) + kd * (kd - 1.0) * cd * std::log1p(-p);
}

namespace {

// Lower and upper envelopes of ln E[Y_x] from the binomial bounds
// (x/y)^y <= C(x,y) <= (ex/y)^y.
double envelope_low(double x, double m, double n, double p, double c) {
  return x * (std::log(m) - std::log(x)) + x * c * (std::log(n - x * c) - std::log(c)) + x * c * std::log(p) +
         x * (x - 1.0) * c * std::log1p(-p);
}

double envelope_high(double x, double m, double n, double p, double c) {
  return x * (1.0 + std::log(m) - std::log(x)) + x * c * (1.0 + std::log(n) - std::log(c)) + x * c * std::log(p) +
         x * (x - 1.0) * c * std::log1p(-p);
}

// Largest root in (lo, hi) of a function that is positive somewhere in the
// interval and negative at hi; bisection after a coarse scan from the top.
template <typename F>
double last_root(F f, double lo, double hi) {
  const int steps = 4096;
  double prev_x = hi, prev_v = f(hi);
  for (int s = steps - 1; s >= 0; --s) {
    const double x = lo + (hi - lo) * s / steps;
    const double v = f(x);
    if (v >= 0.0 && prev_v < 0.0) {
      double a = x, b = prev_x;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (f(mid) >= 0.0) {
          a = mid;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    prev_x = x;
    prev_v = v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

K0Bracket k0_bracket(std::size_t m, std::size_t n, double p, std::size_t c) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("edge probability must lie in (0, 1)");
  if (m == 0 || n == 0 || c == 0) throw DomainError("m, n and c must be positive");
  K0Bracket out;
  for (std::size_t k = 1; k <= m && k * c <= n; ++k) {
    if (expected_patterns(m, n, p, c, k) >= 0.0) out.k0 = k;
  }

  const double md = static_cast<double>(m), nd = static_cast<double>(n), cd = static_cast<double>(c);
  const double ell = -std::log1p(-p);  // ln(1/(1-p))
  const double a = std::log(nd) + std::log(md) / cd - std::log(cd);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (a > 0.0) {
    const double common = a - std::log(a) / cd + std::log(p);
    out.x1 = 1.0 + (common + std::log(ell) / cd) / ell;
    out.x2 = 1.0 + (common + 1.0 + 1.0 / cd + std::log(ell) / cd) / ell;
    out.x1_alt_sign = 1.0 + (common - std::log(ell) / cd) / ell;
    out.x2_alt_sign = 1.0 + (common + 1.0 + 1.0 / cd - std::log(ell) / cd) / ell;
  } else {
    out.x1 = out.x2 = out.x1_alt_sign = out.x2_alt_sign = nan;
  }
  const double hi = nd / cd;
  out.x1_root = last_root([&](double x) { return envelope_low(x, md, nd, p, cd); }, 1e-9, hi * (1.0 - 1e-12));
  out.x2_root = last_root([&](double x) { return envelope_high(x, md, nd, p, cd); }, 1e-9, std::max(hi, md) * 4.0);

  if (std::isfinite(out.x1) && std::isfinite(out.x2)) {
    const double k0 = static_cast<double>(out.k0);
    out.in_bracket = std::floor(out.x1) - 1.0 <= k0 && k0 <= std::ceil(out.x2);
    out.in_strict_bracket = std::floor(out.x1) <= k0 && k0 <= std::ceil(out.x2) - 1.0;
  }
  return out;
}

}  // namespace pliable::solvers
