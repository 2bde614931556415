#include "frares/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "frares/errors.hpp"

namespace frares {

KernelSeq kernel_seq(double alpha, double tau, std::size_t N) {
  if (!(alpha > 0.0)) throw DomainError("kernel_seq: alpha must be positive");
  if (!(tau > 0.0)) throw DomainError("kernel_seq: tau must be positive");
  return KernelSeq{alpha, tau, kernel_values<double>(alpha, tau, N)};
}

std::vector<double> conv(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("conv: length mismatch (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  std::vector<double> out(a.size(), 0.0);
  for (std::size_t n = 0; n < a.size(); ++n) {
    double s = 0.0;
    for (std::size_t j = 0; j <= n; ++j) s += a[n - j] * b[j];
    out[n] = s;
  }
  return out;
}

double poisson_weight(std::size_t n, double tau, double t) {
  if (!(tau > 0.0)) throw DomainError("poisson_weight: tau must be positive");
  if (!(t >= 0.0)) throw DomainError("poisson_weight: t must be non-negative");
  if (t == 0.0) return n == 0 ? 1.0 / tau : 0.0;
  const double x = t / tau;
  const double log_w = -x + static_cast<double>(n) * std::log(x) - std::log(tau) -
                       std::lgamma(static_cast<double>(n) + 1.0);
  return std::exp(log_w);
}

double gamma_tail_cutoff(std::size_t n, double rate, double tail) {
  if (!(rate > 0.0)) throw DomainError("gamma_tail_cutoff: rate must be positive");
  if (!(tail > 0.0 && tail < 1.0)) throw DomainError("gamma_tail_cutoff: tail must be in (0,1)");
  return boost::math::gamma_q_inv(static_cast<double>(n) + 1.0, tail) / rate;
}

QuadratureResult poisson_mass(std::size_t n, double tau, double t_cut, double tol) {
  if (!(t_cut >= 0.0)) throw DomainError("poisson_mass: t_cut must be non-negative");
  using boost::math::quadrature::gauss_kronrod;
  QuadratureResult r;
  r.value = gauss_kronrod<double, 61>::integrate(
      [&](double t) { return poisson_weight(n, tau, t); }, 0.0, t_cut, 20, tol, &r.error);
  if (r.error > std::max(tol, 1e-15) * std::max(1.0, std::abs(r.value)) * 10.0) {
    throw ConvergenceError("poisson_mass: quadrature error estimate " + std::to_string(r.error) +
                           " above tolerance");
  }
  return r;
}

MittagLefflerResult mittag_leffler(double alpha, double beta, double z,
                                   const MittagLefflerOptions& opts) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw DomainError("mittag_leffler: alpha and beta must be positive");
  }
  if (!(std::abs(z) <= opts.max_abs_z)) {
    throw DomainError("mittag_leffler: |z| exceeds the series range");
  }
  MittagLefflerResult out;
  if (z == 0.0) {
    out.value = 1.0 / std::tgamma(beta);
    out.terms = 1;
    return out;
  }

  // |term_k| = exp(k log|z| - lgamma(alpha k + beta)); the sign follows z^k.
  const long double log_abs_z = std::log(static_cast<long double>(std::abs(z)));
  auto log_term = [&](std::size_t k) {
    const long double kk = static_cast<long double>(k);
    return kk * log_abs_z - std::lgamma(static_cast<long double>(alpha) * kk + beta);
  };
  const long double eps = std::numeric_limits<long double>::epsilon();

  long double sum = 0.0L;
  for (std::size_t k = 0; k < opts.max_terms; ++k) {
    const long double mag = std::exp(log_term(k));
    const bool negative = z < 0.0 && (k % 2 == 1);
    sum += negative ? -mag : mag;

    // Past the peak the term ratio is decreasing, so the tail is bounded
    // by a geometric series with the next ratio.
    const long double next = std::exp(log_term(k + 1));
    const long double ratio = std::exp(log_term(k + 2) - log_term(k + 1));
    if (next < mag && ratio < 1.0L) {
      const long double tail = next / (1.0L - ratio);
      if (tail <= eps * std::abs(sum) || tail < std::numeric_limits<double>::min()) {
        out.value = static_cast<double>(sum);
        out.truncation_error = static_cast<double>(tail);
        out.terms = k + 1;
        return out;
      }
    }
  }
  throw ConvergenceError("mittag_leffler: series did not converge within " +
                         std::to_string(opts.max_terms) + " terms");
}

}  // namespace frares
