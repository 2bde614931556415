#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "frares/calculus.hpp"
#include "frares/linop.hpp"

namespace frares {

/// Caputo fractional difference IVP on n = 0..N:
///   C-nabla^alpha u^n = A u^n + C-nabla^{alpha-1} f^n  (n >= 2),
///   u^0 = x0, u^1 = 0,  with 1 < alpha < 2.
class FdeProblem {
 public:
  /// Throws DomainError for alpha outside (1,2) or bad sizes, and
  /// ResolventSetError when tau^{-alpha} is in the spectrum of A.
  FdeProblem(double alpha, LinOp A, Eigen::VectorXd x0, double tau, std::size_t N, VecSeq forcing);

  static FdeProblem unforced(double alpha, LinOp A, Eigen::VectorXd x0, double tau, std::size_t N);
  static FdeProblem constant_forcing(double alpha, LinOp A, Eigen::VectorXd x0, double tau,
                                     std::size_t N, const Eigen::VectorXd& value);

  double alpha() const { return alpha_; }
  const LinOp& generator() const { return A_; }
  const Eigen::VectorXd& x0() const { return x0_; }
  double tau() const { return tau_; }
  std::size_t horizon() const { return N_; }
  const VecSeq& forcing() const { return forcing_; }

 private:
  double alpha_;
  LinOp A_;
  Eigen::VectorXd x0_;
  double tau_;
  std::size_t N_;
  VecSeq forcing_;
};

struct StepResidual {
  std::size_t n = 0;
  double absolute = 0.0;
  double relative = 0.0;  // over the largest of the three terms
};

struct FdeSolution {
  /// Trajectory with the initial conditions imposed: u^0 = x0, u^1 = 0.
  VecSeq u;
  /// The underlying discrete object without overrides (S^n x0 + tau (S*f)^n
  /// for the variation-of-parameters solver).
  VecSeq family_trajectory;
  std::string method;
  /// Residual of family_trajectory for n = 2..N.
  std::vector<StepResidual> residual;
};

/// u^n = S_{alpha,1}^n x0 + tau (S_{alpha,1} * f)^n via the recursive family.
FdeSolution solve_vop(const FdeProblem& p);

/// Implicit stepping of the equation itself, seeded from the variation-of-
/// parameters values at n = 0, 1.
FdeSolution solve_direct(const FdeProblem& p);

/// ||C-nabla^alpha traj^n - A traj^n - C-nabla^{alpha-1} f^n||_inf for n = 2..N.
std::vector<StepResidual> residual(const FdeProblem& p, const VecSeq& traj);

/// Coefficient of u^n after isolating the j = n term of the Caputo sum:
/// k_tau^{2-alpha}(0) / tau (equal to tau^{-alpha}).
double direct_lhs_coefficient(double alpha, double tau);

/// max_n ||a^n - b^n||_inf / max_n ||b^n||_inf
double trajectory_relative_difference(const VecSeq& a, const VecSeq& b);

}  // namespace frares
