#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "frares/linop.hpp"
#include "frares/wide.hpp"

namespace frares {

/// Lower-triangular table a_{n,l}, 0 <= n <= N, 1 <= l <= n+1, such that
/// S^n = sum_l a_{n,l} R_tau^l. Entries are held in extended precision; the
/// table is scalar and independent of the generator.
class CoeffTable {
 public:
  CoeffTable(double alpha, double beta, double tau, std::vector<std::vector<Wide>> rows);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double tau() const { return tau_; }
  /// Largest row index N.
  std::size_t max_index() const { return rows_.size() - 1; }

  /// a_{n,l} rounded to double; 0 outside 1 <= l <= n+1.
  double operator()(std::size_t n, std::size_t l) const;
  const Wide& wide(std::size_t n, std::size_t l) const;
  const std::vector<Wide>& row(std::size_t n) const { return rows_[n]; }

  Wide row_sum_wide(std::size_t n) const;
  double row_sum(std::size_t n) const { return static_cast<double>(row_sum_wide(n)); }

 private:
  double alpha_;
  double beta_;
  double tau_;
  std::vector<std::vector<Wide>> rows_;  // rows_[n][l-1]
};

CoeffTable coeff_table(double alpha, double beta, double tau, std::size_t N);

enum class Construction { explicit_representation, recursive, series };

std::string_view to_string(Construction c);

/// S^0..S^N of a discrete (alpha,beta)-resolvent family, stored with the
/// generator's storage kind.
class ResolventFamily {
 public:
  ResolventFamily(LinOp generator, double alpha, double beta, double tau, Construction method,
                  std::vector<LinOp> ops);

  const LinOp& generator() const { return generator_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double tau() const { return tau_; }
  Construction method() const { return method_; }

  std::size_t size() const { return ops_.size(); }
  std::size_t max_index() const { return ops_.size() - 1; }
  const LinOp& operator[](std::size_t n) const { return ops_[n]; }
  const std::vector<LinOp>& operators() const { return ops_; }

  /// (k^alpha * S)^n = sum_{j<=n} k_tau^alpha(n-j) S^j
  LinOp kernel_conv(std::size_t n) const;

  /// Series terms used (family_series only, 0 otherwise).
  std::size_t series_terms() const { return series_terms_; }
  void set_series_terms(std::size_t terms) { series_terms_ = terms; }

 private:
  LinOp generator_;
  double alpha_;
  double beta_;
  double tau_;
  Construction method_;
  std::vector<LinOp> ops_;
  std::vector<double> k_alpha_;
  std::size_t series_terms_ = 0;
};

/// S^n = sum_{l=1}^{n+1} a_{n,l} R_tau^l, with powers of R_tau built by
/// repeated solves against one factorization, all in extended precision.
ResolventFamily family_explicit(const LinOp& A, const CoeffTable& table, std::size_t N);

/// Solves (I - tau^alpha A) S^n = k^beta(n) I + tau A sum_{j<n} k^alpha(n-j) S^j in order.
ResolventFamily family_recursive(const LinOp& A, double alpha, double beta, double tau,
                                 std::size_t N);

/// S^n = sum_j k_tau^{alpha j + beta}(n) A^j for ||A|| < 1 and tau^alpha < 1.
/// Truncates once the a-priori tail bound drops below tol; throws
/// HypothesisError when the hypotheses fail.
ResolventFamily family_series(const LinOp& A, double alpha, double beta, double tau,
                              std::size_t N, double tol = 1e-12);

}  // namespace frares
