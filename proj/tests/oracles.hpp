#pragma once

// Reference values computed independently of the grid implementation.

#include <cmath>
#include <functional>

#include <boost/math/special_functions/digamma.hpp>

namespace oracle {

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

/// Differential entropy of Beta(a, b) in nats.
inline double beta_entropy(double a, double b) {
  using boost::math::digamma;
  return log_beta(a, b) - (a - 1) * digamma(a) - (b - 1) * digamma(b) +
         (a + b - 2) * digamma(a + b);
}

/// KL(Beta(a1,b1) || Beta(a2,b2)) in nats.
inline double beta_kl(double a1, double b1, double a2, double b2) {
  using boost::math::digamma;
  return log_beta(a2, b2) - log_beta(a1, b1) + (a1 - a2) * digamma(a1) +
         (b1 - b2) * digamma(b1) + (a2 - a1 + b2 - b1) * digamma(a1 + b1);
}

/// Composite Simpson rule on [lo, hi] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) sum += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

/// Solve |alpha - gamma| / max(1 - alpha, alpha) = eps for gamma by
/// bisection. A rejected source puts gamma in [0, alpha], a trusted one in
/// [alpha, 1]; the map is monotone on either side.
inline double invert_source_confidence(double alpha, double eps, bool trusted = false) {
  const double denom = std::max(1.0 - alpha, alpha);
  double lo = trusted ? alpha : 0.0;
  double hi = trusted ? 1.0 : alpha;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double value = std::abs(alpha - mid) / denom;
    if ((value > eps) != trusted) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
