#include "frares/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "frares/errors.hpp"
#include "frares/kernels.hpp"
#include "frares/resolvent.hpp"

namespace frares {

FdeProblem::FdeProblem(double alpha, LinOp A, Eigen::VectorXd x0, double tau, std::size_t N,
                       VecSeq forcing)
    : alpha_(alpha),
      A_(std::move(A)),
      x0_(std::move(x0)),
      tau_(tau),
      N_(N),
      forcing_(std::move(forcing)) {
  if (!(alpha_ > 1.0 && alpha_ < 2.0)) throw DomainError("FdeProblem: alpha must lie in (1,2)");
  if (!(tau_ > 0.0)) throw DomainError("FdeProblem: tau must be positive");
  if (N_ < 2) throw DomainError("FdeProblem: horizon N must be at least 2");
  if (x0_.size() != A_.dim()) throw DomainError("FdeProblem: x0 dimension does not match A");
  if (forcing_.dim() != A_.dim()) throw DomainError("FdeProblem: forcing dimension does not match A");
  if (forcing_.size() < N_ + 1) throw DomainError("FdeProblem: forcing shorter than N+1");
  if (forcing_.tau() != tau_) throw DomainError("FdeProblem: forcing step differs from tau");
  ResolventHandle(A_, alpha_, tau_);  // resolvent-set check
}

FdeProblem FdeProblem::unforced(double alpha, LinOp A, Eigen::VectorXd x0, double tau,
                                std::size_t N) {
  const auto d = A.dim();
  return FdeProblem(alpha, std::move(A), std::move(x0), tau, N, VecSeq::zeros(tau, N + 1, d));
}

FdeProblem FdeProblem::constant_forcing(double alpha, LinOp A, Eigen::VectorXd x0, double tau,
                                        std::size_t N, const Eigen::VectorXd& value) {
  return FdeProblem(alpha, std::move(A), std::move(x0), tau, N,
                    VecSeq::constant(tau, N + 1, value));
}

namespace {

VecSeq with_initial_conditions(const FdeProblem& p, VecSeq traj) {
  traj[0] = p.x0();
  traj[1] = Eigen::VectorXd::Zero(p.x0().size());
  return traj;
}

std::vector<Eigen::VectorXd> family_values(const ResolventFamily& S, const FdeProblem& p,
                                           std::size_t last) {
  const VecSeq& f = p.forcing();
  std::vector<Eigen::VectorXd> out;
  out.reserve(last + 1);
  for (std::size_t n = 0; n <= last; ++n) {
    Eigen::VectorXd conv = Eigen::VectorXd::Zero(p.x0().size());
    for (std::size_t j = 0; j <= n; ++j) conv += S[n - j].apply(f[j]);
    out.push_back(S[n].apply(p.x0()) + p.tau() * conv);
  }
  return out;
}

}  // namespace

FdeSolution solve_vop(const FdeProblem& p) {
  const auto S = family_recursive(p.generator(), p.alpha(), 1.0, p.tau(), p.horizon());
  VecSeq traj(p.tau(), family_values(S, p, p.horizon()));
  FdeSolution sol{with_initial_conditions(p, traj), traj, "vop", {}};
  sol.residual = residual(p, sol.family_trajectory);
  return sol;
}

double direct_lhs_coefficient(double alpha, double tau) {
  return kernel_seq(2.0 - alpha, tau, 0)[0] / tau;
}

FdeSolution solve_direct(const FdeProblem& p) {
  const std::size_t N = p.horizon();
  const double tau = p.tau();
  const ResolventHandle handle(p.generator(), p.alpha(), tau);
  const auto k = kernel_seq(2.0 - p.alpha(), tau, N);
  const double c = direct_lhs_coefficient(p.alpha(), tau);

  const auto seeds = family_values(family_recursive(p.generator(), p.alpha(), 1.0, tau, 1), p, 1);
  std::vector<Eigen::VectorXd> u(N + 1, Eigen::VectorXd::Zero(p.x0().size()));
  u[0] = seeds[0];
  u[1] = seeds[1];

  // second differences (nabla^2 u)^j, zero-extended below j = 0
  std::vector<Eigen::VectorXd> d2(N + 1);
  d2[0] = u[0] / (tau * tau);
  d2[1] = (u[1] - 2.0 * u[0]) / (tau * tau);

  for (std::size_t n = 2; n <= N; ++n) {
    Eigen::VectorXd rhs = caputo_diff(p.forcing(), p.alpha() - 1.0, static_cast<std::ptrdiff_t>(n));
    rhs += c * (2.0 * u[n - 1] - u[n - 2]);
    Eigen::VectorXd memory = Eigen::VectorXd::Zero(p.x0().size());
    for (std::size_t j = 0; j < n; ++j) memory += k[n - j] * d2[j];
    rhs -= tau * memory;
    u[n] = handle.solve_shifted(rhs);
    d2[n] = (u[n] - 2.0 * u[n - 1] + u[n - 2]) / (tau * tau);
  }

  VecSeq traj(tau, std::move(u));
  FdeSolution sol{with_initial_conditions(p, traj), traj, "direct", {}};
  sol.residual = residual(p, sol.family_trajectory);
  return sol;
}

std::vector<StepResidual> residual(const FdeProblem& p, const VecSeq& traj) {
  if (traj.size() < p.horizon() + 1 || traj.dim() != p.x0().size()) {
    throw std::invalid_argument("residual: trajectory does not cover 0..N");
  }
  std::vector<StepResidual> out;
  out.reserve(p.horizon() - 1);
  for (std::size_t n = 2; n <= p.horizon(); ++n) {
    const auto idx = static_cast<std::ptrdiff_t>(n);
    const Eigen::VectorXd lhs = caputo_diff(traj, p.alpha(), idx);
    const Eigen::VectorXd au = p.generator().apply(traj[n]);
    const Eigen::VectorXd g = caputo_diff(p.forcing(), p.alpha() - 1.0, idx);
    StepResidual r;
    r.n = n;
    r.absolute = (lhs - au - g).lpNorm<Eigen::Infinity>();
    const double scale = std::max({lhs.lpNorm<Eigen::Infinity>(), au.lpNorm<Eigen::Infinity>(),
                                   g.lpNorm<Eigen::Infinity>()});
    r.relative = scale > 0.0 ? r.absolute / scale : r.absolute;
    out.push_back(r);
  }
  return out;
}

double trajectory_relative_difference(const VecSeq& a, const VecSeq& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) {
    throw std::invalid_argument("trajectory_relative_difference: shape mismatch");
  }
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    diff = std::max(diff, (a[n] - b[n]).lpNorm<Eigen::Infinity>());
    scale = std::max(scale, b[n].lpNorm<Eigen::Infinity>());
  }
  if (scale == 0.0) return diff;
  return diff / scale;
}

}  // namespace frares
