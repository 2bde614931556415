#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace frares {

enum class OpKind { scalar, diagonal, dense };

/// A linear operator on R^d stored as lambda*I, a diagonal, or a dense matrix.
/// Arithmetic promotes to the wider storage kind (scalar < diagonal < dense).
class LinOp {
 public:
  static LinOp scalar(double value, Eigen::Index dim = 1);
  static LinOp diagonal(Eigen::VectorXd values);
  static LinOp dense(Eigen::MatrixXd values);
  /// Identity with the same kind and dimension as `like`.
  static LinOp identity_like(const LinOp& like);
  static LinOp zero_like(const LinOp& like);

  OpKind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }

  double scalar_value() const;
  const Eigen::VectorXd& diagonal_values() const;
  const Eigen::MatrixXd& matrix() const;

  Eigen::MatrixXd to_dense() const;
  LinOp as_kind(OpKind kind) const;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  /// Maximum absolute row sum.
  double norm_inf() const;
  /// Largest absolute entry of the dense representation.
  double max_abs() const;

  const std::string& label() const { return label_; }
  LinOp& set_label(std::string label) {
    label_ = std::move(label);
    return *this;
  }
  /// Label if set, otherwise a generic description ("dense:8x8").
  std::string descriptor() const;

  /// Entries in row-major order; scalars and diagonals give their stored values.
  std::vector<double> flattened() const;

  LinOp& operator+=(const LinOp& rhs);
  LinOp& operator-=(const LinOp& rhs);
  LinOp& operator*=(double s);

  friend LinOp operator+(LinOp a, const LinOp& b) { return a += b; }
  friend LinOp operator-(LinOp a, const LinOp& b) { return a -= b; }
  friend LinOp operator*(double s, LinOp a) { return a *= s; }
  friend LinOp operator*(LinOp a, double s) { return a *= s; }

 private:
  LinOp() = default;

  OpKind kind_ = OpKind::scalar;
  Eigen::Index dim_ = 1;
  double scalar_ = 0.0;
  Eigen::VectorXd diag_;
  Eigen::MatrixXd dense_;
  std::string label_;
};

/// Operator product a*b (apply b first).
LinOp compose(const LinOp& a, const LinOp& b);

/// Dirichlet 1-D Laplacian (1/h^2) tridiag(1,-2,1) as a dense d x d operator.
LinOp laplacian_1d(Eigen::Index d, double h);

/// Plain-text matrix: rows of whitespace-separated reals, '#' comments allowed.
LinOp load_matrix_file(const std::filesystem::path& path);

/// Operator shorthand: "scalar:<v>[:<dim>]", "diag:<v1>,<v2>,...",
/// "laplacian:<d>:<h>", "matrix:<path>".
LinOp parse_operator(std::string_view descriptor);

/// Factorization of (tau^{-alpha} I - A) reused for every resolvent solve
/// R_tau = tau^{-alpha} (tau^{-alpha} - A)^{-1}.
class ResolventHandle {
 public:
  static constexpr double kConditionLimit = 1e12;

  /// Throws ResolventSetError when tau^{-alpha} is numerically in the spectrum.
  ResolventHandle(LinOp A, double alpha, double tau);

  const LinOp& generator() const { return A_; }
  double alpha() const { return alpha_; }
  double tau() const { return tau_; }
  /// tau^{-alpha}
  double shift() const { return shift_; }
  /// Reciprocal condition estimate of the shifted operator.
  double rcond() const { return rcond_; }

  /// (tau^{-alpha} I - A)^{-1} b
  Eigen::VectorXd solve_shifted(const Eigen::VectorXd& b) const;
  /// R_tau x
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  /// R_tau X as an operator.
  LinOp apply(const LinOp& X) const;

 private:
  LinOp A_;
  double alpha_;
  double tau_;
  double shift_;
  double rcond_ = 1.0;
  Eigen::VectorXd inverse_diag_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

inline Eigen::VectorXd resolvent_apply(const ResolventHandle& h, const Eigen::VectorXd& x) {
  return h.apply(x);
}

}  // namespace frares
