#include "frares/resolvent.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "frares/errors.hpp"
#include "frares/kernels.hpp"

namespace frares {

std::string_view to_string(Construction c) {
  switch (c) {
    case Construction::explicit_representation: return "explicit";
    case Construction::recursive: return "recursive";
    case Construction::series: return "series";
  }
  return "unknown";
}

ResolventFamily::ResolventFamily(LinOp generator, double alpha, double beta, double tau,
                                 Construction method, std::vector<LinOp> ops)
    : generator_(std::move(generator)),
      alpha_(alpha),
      beta_(beta),
      tau_(tau),
      method_(method),
      ops_(std::move(ops)) {
  if (ops_.empty()) throw std::invalid_argument("ResolventFamily: empty family");
  k_alpha_ = kernel_seq(alpha_, tau_, ops_.size() - 1).values;
}

LinOp ResolventFamily::kernel_conv(std::size_t n) const {
  LinOp acc = LinOp::zero_like(ops_.at(n));
  for (std::size_t j = 0; j <= n; ++j) acc += k_alpha_[n - j] * ops_[j];
  return acc;
}

namespace {

void check_params(double alpha, double beta, double tau, const char* who) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(tau > 0.0)) {
    throw DomainError(std::string(who) + ": alpha, beta and tau must be positive");
  }
}

Wide horner_tail(const std::vector<Wide>& coeffs, const Wide& r) {
  // sum_{l=1}^{m} c_l r^l with c_l = coeffs[l-1]
  Wide acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc + *it) * r;
  return acc;
}

}  // namespace

ResolventFamily family_explicit(const LinOp& A, const CoeffTable& table, std::size_t N) {
  if (N > table.max_index()) {
    throw std::invalid_argument("family_explicit: table holds rows up to " +
                                std::to_string(table.max_index()));
  }
  // Raises ResolventSetError with the usual conditioning diagnostics.
  const ResolventHandle check(A, table.alpha(), table.tau());

  const Wide shift = pow(Wide(table.tau()), -Wide(table.alpha()));
  std::vector<LinOp> ops;
  ops.reserve(N + 1);

  if (A.kind() != OpKind::dense) {
    const Eigen::VectorXd lambdas = A.kind() == OpKind::scalar
                                        ? Eigen::VectorXd::Constant(1, A.scalar_value())
                                        : A.diagonal_values();
    std::vector<Wide> r(static_cast<std::size_t>(lambdas.size()));
    for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
      r[static_cast<std::size_t>(i)] = shift / (shift - Wide(lambdas(i)));
    }
    for (std::size_t n = 0; n <= N; ++n) {
      Eigen::VectorXd s(lambdas.size());
      for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
        s(i) = static_cast<double>(horner_tail(table.row(n), r[static_cast<std::size_t>(i)]));
      }
      ops.push_back(A.kind() == OpKind::scalar ? LinOp::scalar(s(0), A.dim())
                                               : LinOp::diagonal(std::move(s)));
    }
  } else {
    const Eigen::Index d = A.dim();
    const WideMatrix shifted = shift * WideMatrix::Identity(d, d) - A.matrix().cast<Wide>();
    const Eigen::PartialPivLU<WideMatrix> lu(shifted);

    // powers[l-1] = R^l
    std::vector<WideMatrix> powers;
    powers.reserve(N + 1);
    powers.push_back(shift * lu.solve(WideMatrix::Identity(d, d)));
    for (std::size_t l = 2; l <= N + 1; ++l) powers.push_back(shift * lu.solve(powers.back()));

    for (std::size_t n = 0; n <= N; ++n) {
      WideMatrix s = WideMatrix::Zero(d, d);
      const auto& row = table.row(n);
      for (std::size_t l = 0; l < row.size(); ++l) s += row[l] * powers[l];
      Eigen::MatrixXd out(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) out(i, j) = static_cast<double>(s(i, j));
      ops.push_back(LinOp::dense(std::move(out)));
    }
  }
  return ResolventFamily(A, table.alpha(), table.beta(), table.tau(),
                         Construction::explicit_representation, std::move(ops));
}

ResolventFamily family_recursive(const LinOp& A, double alpha, double beta, double tau,
                                 std::size_t N) {
  check_params(alpha, beta, tau, "family_recursive");
  const ResolventHandle R(A, alpha, tau);
  const auto ka = kernel_seq(alpha, tau, N);
  const auto kb = kernel_seq(beta, tau, N);
  const LinOp identity = LinOp::identity_like(A);

  std::vector<LinOp> ops;
  ops.reserve(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    LinOp rhs = kb[n] * identity;
    if (n > 0) {
      LinOp history = LinOp::zero_like(A);
      for (std::size_t j = 0; j < n; ++j) history += ka[n - j] * ops[j];
      rhs += tau * compose(A, history);
    }
    ops.push_back(R.apply(rhs));
  }
  return ResolventFamily(A, alpha, beta, tau, Construction::recursive, std::move(ops));
}

ResolventFamily family_series(const LinOp& A, double alpha, double beta, double tau,
                              std::size_t N, double tol) {
  check_params(alpha, beta, tau, "family_series");
  if (!(tol > 0.0)) throw DomainError("family_series: tol must be positive");
  const double norm = A.norm_inf();
  const double tau_alpha = std::pow(tau, alpha);
  if (!(norm < 1.0)) {
    throw HypothesisError("family_series: requires ||A|| < 1 (max row-sum norm is " +
                          std::to_string(norm) + ")");
  }
  if (!(tau_alpha < 1.0)) {
    throw HypothesisError("family_series: requires tau^alpha < 1 (got " +
                          std::to_string(tau_alpha) + ")");
  }

  constexpr std::size_t kMaxTerms = 100000;
  std::vector<LinOp> ops(N + 1, LinOp::zero_like(A));
  LinOp power = LinOp::identity_like(A);  // A^j
  double power_norm = 1.0;                // ||A||^j

  auto coefficients = [&](std::size_t j) {
    return kernel_values<double>(alpha * static_cast<double>(j) + beta, tau, N);
  };
  auto bound_of = [&](const std::vector<double>& c, double pnorm) {
    double b = 0.0;
    for (double v : c) b = std::max(b, std::abs(v));
    return b * pnorm;
  };

  std::vector<double> c = coefficients(0);
  double bound = bound_of(c, power_norm);
  for (std::size_t j = 0; j < kMaxTerms; ++j) {
    for (std::size_t n = 0; n <= N; ++n) ops[n] += c[n] * power;

    const std::vector<double> c_next = coefficients(j + 1);
    const double next_norm = power_norm * norm;
    const double next_bound = bound_of(c_next, next_norm);
    if (next_bound == 0.0) {
      ResolventFamily f(A, alpha, beta, tau, Construction::series, std::move(ops));
      f.set_series_terms(j + 1);
      return f;
    }
    const double ratio = next_bound / bound;
    if (ratio < 1.0 && next_bound / (1.0 - ratio) <= tol) {
      ResolventFamily f(A, alpha, beta, tau, Construction::series, std::move(ops));
      f.set_series_terms(j + 1);
      return f;
    }
    power = compose(power, A);
    power_norm = next_norm;
    c = c_next;
    bound = next_bound;
  }
  throw ConvergenceError("family_series: tail bound did not fall below tol within " +
                         std::to_string(kMaxTerms) + " terms");
}

}  // namespace frares
