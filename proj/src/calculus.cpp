#include "frares/calculus.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "frares/errors.hpp"
#include "frares/kernels.hpp"

namespace frares {

VecSeq::VecSeq(double tau, std::vector<Eigen::VectorXd> entries)
    : tau_(tau), dim_(0), entries_(std::move(entries)) {
  if (!(tau_ > 0.0)) throw DomainError("VecSeq: tau must be positive");
  if (entries_.empty()) throw std::invalid_argument("VecSeq: at least one entry required");
  dim_ = entries_.front().size();
  if (dim_ < 1) throw std::invalid_argument("VecSeq: dimension must be at least 1");
  for (const auto& e : entries_) {
    if (e.size() != dim_) throw std::invalid_argument("VecSeq: entries differ in dimension");
  }
}

VecSeq VecSeq::zeros(double tau, std::size_t length, Eigen::Index dim) {
  return VecSeq(tau, std::vector<Eigen::VectorXd>(length, Eigen::VectorXd::Zero(dim)));
}

VecSeq VecSeq::constant(double tau, std::size_t length, const Eigen::VectorXd& value) {
  return VecSeq(tau, std::vector<Eigen::VectorXd>(length, value));
}

Eigen::VectorXd VecSeq::at(std::ptrdiff_t n) const {
  if (n < 0) return Eigen::VectorXd::Zero(dim_);
  if (static_cast<std::size_t>(n) >= entries_.size()) {
    throw std::out_of_range("VecSeq: index " + std::to_string(n) + " beyond stored range");
  }
  return entries_[static_cast<std::size_t>(n)];
}

Eigen::VectorXd backward_diff(const VecSeq& v, int m, std::ptrdiff_t n) {
  if (m < 0) throw DomainError("backward_diff: order must be non-negative");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.dim());
  double binom = 1.0;
  for (int j = 0; j <= m; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    out += sign * binom * v.at(n - j);
    binom = binom * (m - j) / (j + 1);
  }
  return out / std::pow(v.tau(), m);
}

VecSeq frac_sum(const VecSeq& v, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("frac_sum: alpha must be positive");
  const auto k = kernel_seq(alpha, v.tau(), v.size() - 1);
  std::vector<Eigen::VectorXd> out(v.size(), Eigen::VectorXd::Zero(v.dim()));
  for (std::size_t n = 0; n < v.size(); ++n) {
    for (std::size_t j = 0; j <= n; ++j) out[n] += k[n - j] * v[j];
    out[n] *= v.tau();
  }
  return VecSeq(v.tau(), std::move(out));
}

Eigen::VectorXd caputo_diff(const VecSeq& v, double alpha, std::ptrdiff_t n) {
  if (!(alpha > 0.0)) throw DomainError("caputo_diff: alpha must be positive");
  const double m_real = std::ceil(alpha);
  const int m = static_cast<int>(m_real);
  if (m_real == alpha) return backward_diff(v, m, n);
  if (n < 0) return Eigen::VectorXd::Zero(v.dim());

  const auto k = kernel_seq(m_real - alpha, v.tau(), static_cast<std::size_t>(n));
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.dim());
  for (std::ptrdiff_t j = 0; j <= n; ++j) {
    out += k[static_cast<std::size_t>(n - j)] * backward_diff(v, m, j);
  }
  return v.tau() * out;
}

}  // namespace frares
