#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "frares/resolvent.hpp"

namespace frares {

/// max_n ||A^n - B^n||_max / ||B^n||_max
double max_relative_difference(const ResolventFamily& a, const ResolventFamily& b);

/// Relative residual of S^n = k^beta(n) x + tau A (k^alpha * S)^n for each n,
/// scaled by the largest of the three terms.
std::vector<double> resolvent_equation_residuals(const ResolventFamily& family);

/// max_n ||S^n A - A S^n|| / (||S^n|| ||A||)
double commutation_residual(const ResolventFamily& family);

struct FunctionalEquationCheck {
  double residual = 0.0;  // absolute, max row-sum norm
  double scale = 0.0;     // largest norm among the four terms
  double relative() const { return scale > 0.0 ? residual / scale : residual; }
};

/// S^m (k*S)^n - (k*S)^m S^n - k^beta(m) (k*S)^n + k^beta(n) (k*S)^m
FunctionalEquationCheck check_functional_equation(const ResolventFamily& family, std::size_t m,
                                                  std::size_t n);

struct ZTransformCheck {
  double truncated = 0.0;    // norm of the truncated transform (scalar: its value)
  double closed_form = 0.0;  // norm of the closed form (scalar: its value)
  double residual = 0.0;     // relative to the closed form
  double tail = 0.0;         // estimated relative tail beyond N
  bool certified = false;    // false when the tail cannot be bounded at this z

  bool passed(double bound, double slack = 1e-10) const {
    return certified && tail <= bound && residual <= tail + slack;
  }
};

/// sum_{n<=N} z^{-n} k_tau^alpha(n) against tau^{alpha-1} z^alpha / (z-1)^alpha.
/// The tail bound is rigorous (ratio recurrence).
ZTransformCheck check_kernel_ztransform(double alpha, double tau, double z, std::size_t N);

/// sum_{n<=N} z^{-n} S^n x against
/// (1/tau) w^{alpha-beta} (w^alpha - A)^{-1} x, w = (z-1)/(tau z), real z > 1.
/// The tail is a geometric estimate fitted to the computed norms.
ZTransformCheck check_ztransform(const ResolventFamily& family, double z,
                                 const Eigen::VectorXd& x);

/// int_0^inf rho_n^tau(t) e^{omega t} dt for n = 0..N by adaptive quadrature.
std::vector<double> subordinate_exponential(double omega, double tau, std::size_t N,
                                            double tol = 1e-13);

struct MittagLefflerRow {
  double t = 0.0;
  double discrete = 0.0;
  double continuous = 0.0;
  double abs_error = 0.0;
};

struct MittagLefflerComparison {
  double rho = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t N = 0;
  std::vector<MittagLefflerRow> rows;  // n = 0..N
  /// Max error over n >= 1 (e_{alpha,beta} is singular at t = 0 for beta < 1).
  double max_error = 0.0;
};

/// S^n of the family generated by -rho (tau = 1/N) against
/// e_{alpha,beta}(t) = t^{beta-1} E_{alpha,beta}(-rho t^alpha) on [0,1].
MittagLefflerComparison compare_mittag_leffler(double rho, double alpha, double beta,
                                               std::size_t N);

/// Max error restricted to t = i / coarse_N, i = 1..coarse_N.
double max_error_on_grid(const MittagLefflerComparison& cmp, std::size_t coarse_N);

}  // namespace frares
