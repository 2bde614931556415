#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frares/calculus.hpp"
#include "frares/kernels.hpp"
#include "frares/linop.hpp"
#include "frares/resolvent.hpp"
#include "oracles.hpp"

using namespace frares;
using Eigen::VectorXd;

namespace {
VecSeq scalar_seq(double tau, const std::vector<double>& v) {
  std::vector<VectorXd> e;
  for (double x : v) e.push_back(VectorXd::Constant(1, x));
  return VecSeq(tau, e);
}
}  // namespace

TEST_CASE("backward differences") {
  auto c = VecSeq::constant(0.3, 6, VectorXd::Constant(2, 4.0));
  for (int n = 1; n < 6; ++n) CHECK(backward_diff(c, 1, n).norm() == 0.0);
  CHECK(backward_diff(c, 1, 0)(0) == doctest::Approx(4.0 / 0.3));

  std::vector<double> lin;
  for (int n = 0; n < 8; ++n) lin.push_back(n * 0.25);
  auto l = scalar_seq(0.25, lin);
  for (int n = 1; n < 8; ++n) CHECK(backward_diff(l, 1, n)(0) == doctest::Approx(1.0));

  CHECK(backward_diff(scalar_seq(0.5, {1, 3}), 2, 1)(0) == doctest::Approx(4.0));
  CHECK(c.at(-1).norm() == 0.0);
  CHECK_THROWS_AS(c.at(6), std::out_of_range);
}

TEST_CASE("fractional sum") {
  const double tau = 0.2;
  auto v = scalar_seq(tau, {1, -2, 0.5, 3, 1});
  auto s = frac_sum(v, 1.0);
  double run = 0;
  for (std::size_t n = 0; n < 5; ++n) {
    run += v[n](0);
    CHECK(s[n](0) == doctest::Approx(tau * run));
  }
  auto s2 = frac_sum(v, 2.0);
  auto twice = frac_sum(frac_sum(v, 1.0), 1.0);
  for (std::size_t n = 0; n < 5; ++n) CHECK(s2[n](0) == doctest::Approx(twice[n](0)).epsilon(1e-13));

  auto delta = scalar_seq(tau, {1, 0, 0, 0});
  const auto k = kernel_seq(0.6, tau, 3);
  auto d = frac_sum(delta, 0.6);
  for (std::size_t n = 0; n < 4; ++n) CHECK(d[n](0) == doctest::Approx(tau * k[n]));

  // Semigroup of fractional sums follows from the kernel law.
  auto ab = frac_sum(frac_sum(v, 0.4), 0.7);
  auto direct = frac_sum(v, 1.1);
  for (std::size_t n = 0; n < 5; ++n) CHECK(ab[n](0) == doctest::Approx(direct[n](0)).epsilon(1e-12));
}

TEST_CASE("caputo difference") {
  auto zero = VecSeq::zeros(0.1, 5, 3);
  for (int n = 0; n < 5; ++n) CHECK(caputo_diff(zero, 1.4, n).norm() == 0.0);

  const double tau = 0.1, alpha = 0.35, c = 2.5;
  auto cst = VecSeq::constant(tau, 10, VectorXd::Constant(1, c));
  const auto k = kernel_seq(1 - alpha, tau, 9);
  for (int n = 0; n < 10; ++n) CHECK(caputo_diff(cst, alpha, n)(0) == doctest::Approx(k[n] * c).epsilon(1e-13));

  std::vector<double> raw{0.3, -1.0, 2.0, 0.7, 0.1, -0.4, 1.2};
  auto v = scalar_seq(0.2, raw);
  for (double a : {0.5, 1.0, 1.3, 1.8, 2.0})
    for (std::size_t n = 0; n < raw.size(); ++n)
      CHECK(caputo_diff(v, a, n)(0) == doctest::Approx(oracle::caputo(raw, a, 0.2, n)).epsilon(1e-12));

  // Linearity.
  std::vector<double> other{1, 2, 3, 4, 5, 6, 7}, combo;
  for (std::size_t i = 0; i < raw.size(); ++i) combo.push_back(2 * raw[i] - 3 * other[i]);
  auto w = scalar_seq(0.2, other), vw = scalar_seq(0.2, combo);
  for (int n = 0; n < 7; ++n)
    CHECK(caputo_diff(vw, 1.5, n)(0) ==
          doctest::Approx(2 * caputo_diff(v, 1.5, n)(0) - 3 * caputo_diff(w, 1.5, n)(0)).epsilon(1e-12));
}

TEST_CASE("caputo of the resolvent family reproduces the generator") {
  const double alpha = 1.5, tau = 0.1;
  const LinOp A = laplacian_1d(4, 0.25);
  const auto fam = family_recursive(A, alpha, 1.0, tau, 12);
  VectorXd x(4);
  x << 1, -0.5, 0.25, 2;
  std::vector<VectorXd> e;
  for (std::size_t n = 0; n <= 12; ++n) e.push_back(fam[n].apply(x));
  VecSeq v(tau, e);
  for (int n = 2; n <= 12; ++n) {
    const VectorXd lhs = caputo_diff(v, alpha, n);
    const VectorXd rhs = A.apply(v[n]);
    // Holds only up to the k^{1-alpha}(n) x term coming from the zero extension.
    const VectorXd defect = lhs - rhs;
    CHECK((defect - kernel_values<double>(1 - alpha, tau, n)[n] * x).norm() < 1e-9 * rhs.norm());
  }
}
