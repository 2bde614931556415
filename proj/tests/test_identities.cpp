#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frares/identities.hpp"
#include "frares/kernels.hpp"
#include "frares/resolvent.hpp"

using namespace frares;
using Eigen::VectorXd;

TEST_CASE("resolvent equation and commutation") {
  const auto L = laplacian_1d(16, 1.0 / 16);
  for (const auto& F : {family_recursive(L, 1.5, 1.0, 0.1, 50),
                        family_explicit(L, coeff_table(1.5, 1.0, 0.1, 50), 50),
                        family_recursive(LinOp::scalar(-1.0), 0.4, 1.3, 0.1, 50)}) {
    const auto res = resolvent_equation_residuals(F);
    REQUIRE(res.size() == 51);
    for (double r : res) CHECK(r < 1e-10);
    CHECK(commutation_residual(F) < 1e-10);
  }
  // A family that is not a resolvent family must be flagged.
  auto F = family_recursive(LinOp::scalar(-1.0), 1.5, 1.0, 0.1, 10);
  auto G = family_recursive(LinOp::scalar(-1.0), 1.5, 1.2, 0.1, 10);
  std::vector<LinOp> mixed(F.operators());
  mixed[5] = G[5];
  ResolventFamily bad(F.generator(), 1.5, 1.0, 0.1, Construction::recursive, mixed);
  CHECK(resolvent_equation_residuals(bad)[5] > 1e-3);
}

TEST_CASE("functional equation") {
  const auto F = family_recursive(laplacian_1d(8, 0.125), 1.5, 1.0, 0.1, 16);
  for (std::size_t m = 0; m <= 16; ++m) {
    CHECK(check_functional_equation(F, m, m).residual == 0.0);
    for (std::size_t n = 0; n <= 16; ++n) {
      const auto c = check_functional_equation(F, m, n);
      CHECK(c.residual <= 1e-9 * c.scale);
    }
  }
}

TEST_CASE("z-transform") {
  const auto k = check_kernel_ztransform(0.5, 0.1, 2.0, 200);
  CHECK(k.certified);
  CHECK(k.passed(1e-6));
  CHECK(k.closed_form == doctest::Approx(std::pow(0.1, -0.5) * std::sqrt(2.0)));

  const auto k15 = check_kernel_ztransform(1.5, 0.1, 2.0, 200);
  CHECK(k15.passed(1e-6));

  const auto F = family_recursive(LinOp::scalar(-1.0), 1.5, 1.0, 0.1, 200);
  const auto z = check_ztransform(F, 2.0, VectorXd::Ones(1));
  CHECK(z.certified);
  CHECK(z.passed(1e-6));

  // Too few terms: the tail estimate is honest and the bound is not met.
  const auto shortz = check_kernel_ztransform(0.5, 0.1, 2.0, 10);
  CHECK_FALSE(shortz.passed(1e-6));
  CHECK(shortz.residual <= shortz.tail + 1e-10);
}

TEST_CASE("subordination") {
  const auto ones = subordinate_exponential(0.0, 0.1, 10);
  for (double v : ones) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  const auto e = subordinate_exponential(-1.0, 0.1, 50);
  const auto F = family_recursive(LinOp::scalar(-1.0), 1.0, 1.0, 0.1, 50);
  for (std::size_t n = 0; n <= 50; ++n) {
    const double want = std::pow(1.1, -static_cast<double>(n + 1));
    CHECK(std::abs(e[n] - want) / want < 1e-8);
    CHECK(std::abs(e[n] - F[n].scalar_value()) / want < 1e-8);
  }
  const auto g = subordinate_exponential(2.0, 0.1, 20);
  CHECK(g[20] == doctest::Approx(std::pow(0.8, -21.0)).epsilon(1e-10));
}

TEST_CASE("mittag-leffler comparison") {
  const auto a = compare_mittag_leffler(1.0, 1.1, 0.1, 100);
  REQUIRE(a.rows.size() == 101);
  CHECK(a.rows[100].t == doctest::Approx(1.0));
  CHECK(a.max_error == doctest::Approx(0.36321681424).epsilon(1e-9));
  const auto a2 = compare_mittag_leffler(1.0, 1.1, 0.1, 200);
  CHECK(max_error_on_grid(a2, 100) == doctest::Approx(0.17866785447).epsilon(1e-9));

  const auto b = compare_mittag_leffler(1.0, 0.1, 0.9, 100);
  CHECK(b.max_error == doctest::Approx(0.046327479027).epsilon(1e-9));
  const auto b2 = compare_mittag_leffler(1.0, 0.1, 0.9, 200);
  CHECK(max_error_on_grid(b2, 100) == doctest::Approx(0.025127113938).epsilon(1e-9));

  // Semigroup case: S^n = (1 + tau)^{-(n+1)} against e^{-t}.
  const auto c = compare_mittag_leffler(1.0, 1.0, 1.0, 400);
  CHECK(c.rows[400].continuous == doctest::Approx(std::exp(-1.0)));
  CHECK(c.max_error < 3e-3);
}
