#include "frares/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "frares/errors.hpp"
#include "frares/kernels.hpp"

namespace frares {

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();

}  // namespace

double max_relative_difference(const ResolventFamily& a, const ResolventFamily& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_relative_difference: length mismatch");
  double worst = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    const double diff = (a[n] - b[n]).max_abs();
    worst = std::max(worst, diff / std::max(b[n].max_abs(), kTiny));
  }
  return worst;
}

std::vector<double> resolvent_equation_residuals(const ResolventFamily& family) {
  const auto kb = kernel_seq(family.beta(), family.tau(), family.max_index());
  const LinOp identity = LinOp::identity_like(family.generator());
  std::vector<double> out(family.size());
  for (std::size_t n = 0; n < family.size(); ++n) {
    const LinOp source = kb[n] * identity;
    const LinOp memory = family.tau() * compose(family.generator(), family.kernel_conv(n));
    const double residual = (family[n] - source - memory).max_abs();
    const double scale = std::max({family[n].max_abs(), source.max_abs(), memory.max_abs(), kTiny});
    out[n] = residual / scale;
  }
  return out;
}

double commutation_residual(const ResolventFamily& family) {
  const LinOp& A = family.generator();
  const double a_norm = A.norm_inf();
  if (a_norm == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& S : family.operators()) {
    const double diff = (compose(S, A) - compose(A, S)).norm_inf();
    worst = std::max(worst, diff / std::max(S.norm_inf() * a_norm, kTiny));
  }
  return worst;
}

FunctionalEquationCheck check_functional_equation(const ResolventFamily& family, std::size_t m,
                                                  std::size_t n) {
  if (m > family.max_index() || n > family.max_index()) {
    throw std::out_of_range("check_functional_equation: index beyond the family");
  }
  const auto kb = kernel_seq(family.beta(), family.tau(), family.max_index());
  const LinOp conv_m = family.kernel_conv(m);
  const LinOp conv_n = family.kernel_conv(n);

  const LinOp t1 = compose(family[m], conv_n);
  const LinOp t2 = compose(family[n], conv_m);
  const LinOp t3 = kb[m] * conv_n;
  const LinOp t4 = kb[n] * conv_m;

  FunctionalEquationCheck out;
  out.residual = (t1 - t2 - t3 + t4).norm_inf();
  out.scale = std::max({t1.norm_inf(), t2.norm_inf(), t3.norm_inf(), t4.norm_inf()});
  return out;
}

ZTransformCheck check_kernel_ztransform(double alpha, double tau, double z, std::size_t N) {
  if (!(z > 1.0)) throw DomainError("check_kernel_ztransform: z must exceed 1");
  const auto k = kernel_seq(alpha, tau, N + 1);

  double sum = 0.0;
  double zpow = 1.0;  // z^{-n}
  for (std::size_t n = 0; n <= N; ++n) {
    sum += k[n] * zpow;
    zpow /= z;
  }
  const double closed = std::pow(tau, alpha - 1.0) * std::pow(z / (z - 1.0), alpha);

  // For n > N the ratio k(n+1)/k(n) = (alpha+n)/(n+1) never exceeds q.
  const double q = alpha > 1.0 ? (alpha + static_cast<double>(N) + 1.0) /
                                     (static_cast<double>(N) + 2.0)
                               : 1.0;
  ZTransformCheck out;
  out.truncated = sum;
  out.closed_form = closed;
  out.residual = std::abs(sum - closed) / std::abs(closed);
  out.certified = q < z;
  out.tail = out.certified ? k[N + 1] * zpow / (1.0 - q / z) / std::abs(closed)
                           : std::numeric_limits<double>::infinity();
  return out;
}

ZTransformCheck check_ztransform(const ResolventFamily& family, double z,
                                 const Eigen::VectorXd& x) {
  if (!(z > 1.0)) throw DomainError("check_ztransform: z must exceed 1");
  const LinOp& A = family.generator();
  const std::size_t N = family.max_index();

  Eigen::VectorXd lhs = Eigen::VectorXd::Zero(A.dim());
  double zpow = 1.0;
  std::vector<double> norms(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    lhs += zpow * family[n].apply(x);
    norms[n] = family[n].norm_inf();
    zpow /= z;
  }

  const double w = (z - 1.0) / (family.tau() * z);
  const double w_alpha = std::pow(w, family.alpha());
  const Eigen::MatrixXd shifted = w_alpha * Eigen::MatrixXd::Identity(A.dim(), A.dim()) - A.to_dense();
  const Eigen::VectorXd rhs = std::pow(w, family.alpha() - family.beta()) / family.tau() *
                              shifted.partialPivLu().solve(x);

  // Geometric envelope C q^n fitted to the computed norms.
  const double C = *std::max_element(norms.begin(), norms.end());
  double q = 1.0;
  if (N >= 2 && norms[N / 2] > 0.0) {
    q = std::max(1.0, std::pow(norms[N] / norms[N / 2], 1.0 / static_cast<double>(N - N / 2)));
  }

  ZTransformCheck out;
  out.truncated = lhs.norm();
  out.closed_form = rhs.norm();
  const double scale = std::max(rhs.norm(), kTiny);
  out.residual = (lhs - rhs).norm() / scale;
  out.certified = q < z;
  out.tail = out.certified ? C * x.lpNorm<Eigen::Infinity>() * std::sqrt(double(A.dim())) *
                                 std::pow(q / z, static_cast<double>(N + 1)) / (1.0 - q / z) / scale
                           : std::numeric_limits<double>::infinity();
  return out;
}

std::vector<double> subordinate_exponential(double omega, double tau, std::size_t N, double tol) {
  if (!(tau > 0.0)) throw DomainError("subordinate_exponential: tau must be positive");
  if (!(omega < 1.0 / tau)) throw DomainError("subordinate_exponential: need omega < 1/tau");
  using boost::math::quadrature::gauss_kronrod;

  const double rate = 1.0 / tau - omega;
  std::vector<double> out(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    const double lg = std::lgamma(static_cast<double>(n) + 1.0);
    auto integrand = [&](double t) {
      if (t <= 0.0) return n == 0 ? 1.0 / tau : 0.0;
      return std::exp(-t * rate + static_cast<double>(n) * std::log(t / tau) - std::log(tau) - lg);
    };
    const double t_cut = gamma_tail_cutoff(n, rate, 1e-18);
    double err = 0.0;
    const double value = gauss_kronrod<double, 61>::integrate(integrand, 0.0, t_cut, 25, tol, &err);
    if (!(err <= 10.0 * tol * std::abs(value) + kTiny)) {
      throw ConvergenceError("subordinate_exponential: quadrature did not converge at n = " +
                             std::to_string(n));
    }
    out[n] = value;
  }
  return out;
}

MittagLefflerComparison compare_mittag_leffler(double rho, double alpha, double beta,
                                               std::size_t N) {
  if (!(rho > 0.0)) throw DomainError("compare_mittag_leffler: rho must be positive");
  if (N < 1) throw DomainError("compare_mittag_leffler: need N >= 1");
  const double tau = 1.0 / static_cast<double>(N);
  const auto family = family_recursive(LinOp::scalar(-rho), alpha, beta, tau, N);

  MittagLefflerComparison cmp;
  cmp.rho = rho;
  cmp.alpha = alpha;
  cmp.beta = beta;
  cmp.N = N;
  cmp.rows.reserve(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    MittagLefflerRow row;
    row.t = static_cast<double>(n) * tau;
    row.discrete = family[n].scalar_value();
    if (n == 0) {
      // t^{beta-1} / Gamma(beta) at t = 0
      row.continuous = beta < 1.0   ? std::numeric_limits<double>::infinity()
                       : beta == 1.0 ? 1.0
                                     : 0.0;
    } else {
      row.continuous = std::pow(row.t, beta - 1.0) *
                       mittag_leffler(alpha, beta, -rho * std::pow(row.t, alpha)).value;
      cmp.max_error = std::max(cmp.max_error, std::abs(row.discrete - row.continuous));
    }
    row.abs_error = std::abs(row.discrete - row.continuous);
    cmp.rows.push_back(row);
  }
  return cmp;
}

double max_error_on_grid(const MittagLefflerComparison& cmp, std::size_t coarse_N) {
  if (coarse_N == 0 || cmp.N % coarse_N != 0) {
    throw std::invalid_argument("max_error_on_grid: coarse grid must divide the fine grid");
  }
  const std::size_t stride = cmp.N / coarse_N;
  double worst = 0.0;
  for (std::size_t i = 1; i <= coarse_N; ++i) worst = std::max(worst, cmp.rows[i * stride].abs_error);
  return worst;
}

}  // namespace frares
