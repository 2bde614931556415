#pragma once

// Independent reference implementations used only by the tests.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

// k_tau^alpha(n) from log-Gamma, not the ratio recurrence.
inline double kernel(double alpha, double tau, std::size_t n) {
  const long double a = alpha;
  const long double ln = std::lgamma(a + n) - std::lgamma(a) - std::lgamma(static_cast<long double>(n) + 1);
  return static_cast<double>(std::pow(static_cast<long double>(tau), a - 1) * std::exp(ln));
}

inline double scalar_resolvent(double lambda, double alpha, double tau) {
  const double s = std::pow(tau, -alpha);
  return s / (s - lambda);
}

// Scalar family from the resolvent equation, solved forward in long double.
inline std::vector<long double> scalar_family(double lambda, double alpha, double beta, double tau,
                                              std::size_t N) {
  std::vector<long double> ka(N + 1), kb(N + 1), s(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    const long double lna = std::lgamma((long double)alpha + n) - std::lgamma((long double)alpha) -
                            std::lgamma((long double)n + 1);
    const long double lnb = std::lgamma((long double)beta + n) - std::lgamma((long double)beta) -
                            std::lgamma((long double)n + 1);
    ka[n] = std::pow((long double)tau, (long double)alpha - 1) * std::exp(lna);
    kb[n] = std::pow((long double)tau, (long double)beta - 1) * std::exp(lnb);
  }
  for (std::size_t n = 0; n <= N; ++n) {
    long double acc = kb[n];
    for (std::size_t j = 0; j < n; ++j) acc += lambda * tau * ka[n - j] * s[j];
    s[n] = acc / (1.0L - lambda * tau * ka[0]);
  }
  return s;
}

// Caputo backward difference straight from the definition, scalar sequence,
// zero extension for negative indices.
inline double caputo(const std::vector<double>& v, double alpha, double tau, std::size_t n) {
  const int m = static_cast<int>(std::ceil(alpha));
  auto at = [&](long i) { return i < 0 ? 0.0 : v[static_cast<std::size_t>(i)]; };
  auto nabla = [&](long j) {
    double acc = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= m; ++i) {
      acc += ((i % 2) ? -binom : binom) * at(j - i);
      binom = binom * (m - i) / (i + 1);
    }
    return acc / std::pow(tau, m);
  };
  if (m == alpha) return nabla(static_cast<long>(n));
  double out = 0.0;
  for (std::size_t j = 0; j <= n; ++j) out += kernel(m - alpha, tau, n - j) * nabla(static_cast<long>(j));
  return tau * out;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
