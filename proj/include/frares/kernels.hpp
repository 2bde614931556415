#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace frares {

/// The sequence k_tau^alpha(0..N), the Poisson-subordinated image of
/// g_alpha(t) = t^{alpha-1} / Gamma(alpha).
struct KernelSeq {
  double alpha = 1.0;
  double tau = 1.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t n) const { return values[n]; }
};

/// Ratio recurrence k(n+1) = k(n) (alpha + n) / (n + 1), k(0) = tau^{alpha-1}.
/// No domain check, so it also serves negative orders and wide scalars.
template <class Real>
std::vector<Real> kernel_values(const Real& alpha, const Real& tau, std::size_t N) {
  using std::pow;
  std::vector<Real> k(N + 1);
  k[0] = pow(tau, alpha - Real(1));
  for (std::size_t n = 0; n < N; ++n) {
    k[n + 1] = k[n] * (alpha + Real(n)) / Real(n + 1);
  }
  return k;
}

/// Throws DomainError unless alpha > 0 and tau > 0.
KernelSeq kernel_seq(double alpha, double tau, std::size_t N);

/// out[n] = sum_{j<=n} a[n-j] b[j]. Throws std::invalid_argument on length mismatch.
std::vector<double> conv(std::span<const double> a, std::span<const double> b);

/// rho_n^tau(t) = e^{-t/tau} (t/tau)^n / (tau n!), evaluated in log space.
double poisson_weight(std::size_t n, double tau, double t);

/// Smallest T with P[X > T] <= tail for X ~ Gamma(shape n+1, rate).
/// rho_n^tau is this density for rate 1/tau.
double gamma_tail_cutoff(std::size_t n, double rate, double tail);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod integral of rho_n^tau over [0, t_cut].
/// Throws ConvergenceError when the error estimate stays above tol.
QuadratureResult poisson_mass(std::size_t n, double tau, double t_cut, double tol = 1e-12);

struct MittagLefflerOptions {
  std::size_t max_terms = 512;
  double max_abs_z = 50.0;
};

struct MittagLefflerResult {
  double value = 0.0;
  double truncation_error = 0.0;
  std::size_t terms = 0;
};

/// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta) by the power series.
/// Throws ConvergenceError when max_terms is exhausted, DomainError for
/// non-positive parameters or |z| > max_abs_z.
MittagLefflerResult mittag_leffler(double alpha, double beta, double z,
                                   const MittagLefflerOptions& opts = {});

}  // namespace frares
