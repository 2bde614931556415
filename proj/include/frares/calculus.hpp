#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace frares {

/// A vector-valued sequence v^0..v^N on a uniform grid of step tau.
/// Entries at negative indices read as the zero vector.
class VecSeq {
 public:
  VecSeq(double tau, std::vector<Eigen::VectorXd> entries);

  static VecSeq zeros(double tau, std::size_t length, Eigen::Index dim);
  static VecSeq constant(double tau, std::size_t length, const Eigen::VectorXd& value);

  double tau() const { return tau_; }
  std::size_t size() const { return entries_.size(); }
  Eigen::Index dim() const { return dim_; }

  const Eigen::VectorXd& operator[](std::size_t n) const { return entries_[n]; }
  Eigen::VectorXd& operator[](std::size_t n) { return entries_[n]; }

  /// Zero-extended read; throws std::out_of_range past the stored range.
  Eigen::VectorXd at(std::ptrdiff_t n) const;

  const std::vector<Eigen::VectorXd>& entries() const { return entries_; }

 private:
  double tau_;
  Eigen::Index dim_;
  std::vector<Eigen::VectorXd> entries_;
};

/// (nabla_tau^m v)^n = tau^{-m} sum_{j=0}^{m} C(m,j) (-1)^j v^{n-j}.
Eigen::VectorXd backward_diff(const VecSeq& v, int m, std::ptrdiff_t n);

/// (nabla_tau^{-alpha} v)^n = tau sum_{j<=n} k_tau^alpha(n-j) v^j.
VecSeq frac_sum(const VecSeq& v, double alpha);

/// Caputo backward difference nabla^{-(m-alpha)} (nabla^m v) at index n,
/// m = ceil(alpha). Integer orders reduce to backward_diff.
Eigen::VectorXd caputo_diff(const VecSeq& v, double alpha, std::ptrdiff_t n);

}  // namespace frares
