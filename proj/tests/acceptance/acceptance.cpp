// One line per acceptance criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "frares/identities.hpp"
#include "frares/kernels.hpp"
#include "frares/resolvent.hpp"
#include "frares/solver.hpp"

using namespace frares;
using Eigen::VectorXd;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

int failures = 0;

void criterion(int id, const std::string& name, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (time_limit > 0 && secs >= time_limit) {
    o.pass = false;
    o.detail += "; runtime " + sci(secs) + " s over the " + sci(time_limit) + " s limit";
  }
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %-34s %s [%.3f s]\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

double max_of(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, x);
  return m;
}

// Recorded on the first run; later runs must reproduce them.
constexpr double kFig2MaxError[2][2] = {{0.36321681424, 0.17866785447}, {0.046327479027, 0.025127113938}};

}  // namespace

int main() {
  criterion(1, "kernel semigroup law", 1.0, [] {
    double worst = 0;
    for (double a : {0.3, 0.5, 1.0, 1.5})
      for (double b : {0.3, 0.5, 1.0, 1.5})
        for (double tau : {0.05, 0.1, 0.5}) {
          const auto ka = kernel_seq(a, tau, 64), kb = kernel_seq(b, tau, 64), kab = kernel_seq(a + b, tau, 64);
          const auto c = conv(ka.values, kb.values);
          for (std::size_t n = 0; n <= 64; ++n) worst = std::max(worst, std::abs(tau * c[n] - kab[n]) / kab[n]);
        }
    return Outcome{worst <= 1e-10, "max rel residual " + sci(worst)};
  });

  criterion(2, "identity coefficient table", 0, [] {
    double worst = 0;
    for (double tau : {0.01, 0.1, 1.0, 7.5}) {
      const auto t = coeff_table(1.0, 1.0, tau, 50);
      for (std::size_t n = 0; n <= 50; ++n)
        for (std::size_t l = 1; l <= n + 1; ++l) worst = std::max(worst, std::abs(t(n, l) - (l == n + 1 ? 1.0 : 0.0)));
    }
    return Outcome{worst < 1e-12, "max off-pattern deviation " + sci(worst)};
  });

  criterion(3, "coefficient row sums", 0, [] {
    double worst = 0;
    for (auto [a, b] : {std::pair{1.3, 1.0}, std::pair{1.5, 1.0}, std::pair{1.1, 0.1}, std::pair{0.1, 0.9}}) {
      const auto t = coeff_table(a, b, 0.1, 200);
      const auto kb = kernel_seq(b, 0.1, 200);
      for (std::size_t n = 0; n <= 200; ++n) worst = std::max(worst, std::abs(t.row_sum(n) - kb[n]) / kb[n]);
    }
    return Outcome{worst <= 1e-10, "max rel error " + sci(worst) + " (N = 200)"};
  });

  // Families shared by criteria 4 and 5.
  std::vector<std::pair<std::string, ResolventFamily>> families;
  criterion(4, "construction equivalence", 5.0, [&] {
    const auto A = LinOp::scalar(-1.0);
    const auto L = laplacian_1d(16, 1.0 / 16);
    const auto B = LinOp::scalar(0.3);
    families.clear();
    families.emplace_back("scalar explicit", family_explicit(A, coeff_table(1.5, 1.0, 0.1, 50), 50));
    families.emplace_back("scalar recursive", family_recursive(A, 1.5, 1.0, 0.1, 50));
    families.emplace_back("laplacian explicit", family_explicit(L, coeff_table(1.5, 1.0, 0.1, 50), 50));
    families.emplace_back("laplacian recursive", family_recursive(L, 1.5, 1.0, 0.1, 50));
    families.emplace_back("series", family_series(B, 0.7, 0.7, 0.2, 50, 1e-12));
    families.emplace_back("series-case recursive", family_recursive(B, 0.7, 0.7, 0.2, 50));
    families.emplace_back("series-case explicit", family_explicit(B, coeff_table(0.7, 0.7, 0.2, 50), 50));
    const double d1 = max_relative_difference(families[0].second, families[1].second);
    const double d2 = max_relative_difference(families[2].second, families[3].second);
    const double d3 = std::max(max_relative_difference(families[4].second, families[5].second),
                               max_relative_difference(families[4].second, families[6].second));
    const double worst = std::max({d1, d2, d3});
    return Outcome{worst <= 1e-8, "scalar " + sci(d1) + ", laplacian16 " + sci(d2) + ", series " + sci(d3)};
  });

  criterion(5, "resolvent-equation residual", 0, [&] {
    if (families.empty()) return Outcome{false, "no families from criterion 4"};
    double worst = 0;
    std::string at;
    for (const auto& [name, F] : families) {
      const double r = max_of(resolvent_equation_residuals(F));
      if (r >= worst) {
        worst = r;
        at = name;
      }
    }
    return Outcome{worst <= 1e-10, "max rel residual " + sci(worst) + " (" + at + ")"};
  });

  criterion(6, "backward-Euler specialization", 0, [] {
    const auto A = LinOp::scalar(-1.0);
    const auto R = family_recursive(A, 1.0, 1.0, 0.1, 50);
    const auto E = family_explicit(A, coeff_table(1.0, 1.0, 0.1, 50), 50);
    const auto Q = subordinate_exponential(-1.0, 0.1, 50);
    double closed = 0, quad = 0;
    for (std::size_t n = 0; n <= 50; ++n) {
      const double want = std::pow(1.1, -static_cast<double>(n + 1));
      closed = std::max({closed, std::abs(R[n].scalar_value() - want), std::abs(E[n].scalar_value() - want)});
      quad = std::max(quad, std::abs(Q[n] - R[n].scalar_value()) / want);
    }
    return Outcome{closed <= 1e-10 && quad <= 1e-8,
                   "closed form " + sci(closed) + ", quadrature rel " + sci(quad)};
  });

  criterion(7, "functional equation", 0, [] {
    const auto F = family_recursive(laplacian_1d(8, 1.0 / 8), 1.5, 1.0, 0.1, 16);
    double worst = 0;
    for (std::size_t m = 0; m <= 16; ++m)
      for (std::size_t n = 0; n <= 16; ++n) worst = std::max(worst, check_functional_equation(F, m, n).relative());
    return Outcome{worst <= 1e-9, "max residual / scale " + sci(worst)};
  });

  criterion(8, "z-transform", 0, [] {
    const auto k05 = check_kernel_ztransform(0.5, 0.1, 2.0, 200);
    const auto k15 = check_kernel_ztransform(1.5, 0.1, 2.0, 200);
    const auto F = family_recursive(LinOp::scalar(-1.0), 1.5, 1.0, 0.1, 200);
    const auto fz = check_ztransform(F, 2.0, VectorXd::Ones(1));
    const bool ok = k05.passed(1e-6) && k15.passed(1e-6) && fz.passed(1e-6);
    std::string d = "kernel " + sci(std::max(k05.residual, k15.residual)) + " (tail " +
                    sci(std::max(k05.tail, k15.tail)) + "), family " + sci(fz.residual) + " (tail " + sci(fz.tail) + ")";
    if (!k05.certified || !k15.certified || !fz.certified) d += ", INCONCLUSIVE";
    return Outcome{ok, d};
  });

  criterion(9, "Mittag-Leffler comparison", 2.0, [] {
    const std::pair<double, double> panels[2] = {{1.1, 0.1}, {0.1, 0.9}};
    bool ok = true;
    std::string d;
    for (int i = 0; i < 2; ++i) {
      const auto [a, b] = panels[i];
      const auto coarse = compare_mittag_leffler(1.0, a, b, 100);
      const auto fine = compare_mittag_leffler(1.0, a, b, 200);
      const double shared = max_error_on_grid(fine, 100);
      const bool pinned = std::abs(coarse.max_error - kFig2MaxError[i][0]) <= 1e-9 * kFig2MaxError[i][0] &&
                          std::abs(shared - kFig2MaxError[i][1]) <= 1e-9 * kFig2MaxError[i][1];
      ok = ok && pinned && shared <= coarse.max_error;
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s(%.1f,%.1f) N=100 %.6e, N=200 %.6e%s", i ? "; " : "", a, b,
                    coarse.max_error, shared, pinned ? "" : " (pin mismatch)");
      d += buf;
    }
    return Outcome{ok, d};
  });

  criterion(10, "solver cross-validation", 0, [] {
    VectorXd lam(3);
    lam << -4.0, -1.0, -0.25;
    const std::pair<std::string, LinOp> ops[] = {
        {"scalar", LinOp::scalar(-1.0, 3)}, {"diag", LinOp::diagonal(lam)}, {"laplacian", laplacian_1d(3, 1.0 / 3)}};
    VectorXd x0(3);
    x0 << 1.0, -0.5, 0.25;
    const double tau = 0.1;
    const std::size_t N = 40;

    double agree_x0 = 0, agree_f = 0, direct_res = 0, pin_dev = 0;
    bool stable = true;
    for (const auto& [name, A] : ops)
      for (double alpha : {1.25, 1.5, 1.75}) {
        const auto k = kernel_values<double>(1.0 - alpha, tau, N);
        for (bool forced : {false, true}) {
          const auto p = forced ? FdeProblem::constant_forcing(alpha, A, x0, tau, N, VectorXd::Ones(3))
                                : FdeProblem::unforced(alpha, A, x0, tau, N);
          const auto v = solve_vop(p);
          const auto d = solve_direct(p);
          agree_x0 = std::max(agree_x0, trajectory_relative_difference(v.family_trajectory, d.family_trajectory));
          for (const auto& r : d.residual) direct_res = std::max(direct_res, r.relative);

          // The variation-of-parameters residual is k^{1-alpha}(n) |x0|_inf.
          const auto again = solve_vop(p);
          for (std::size_t i = 0; i < v.residual.size(); ++i) {
            const auto& r = v.residual[i];
            pin_dev = std::max(pin_dev, std::abs(r.absolute - std::abs(k[r.n]) * x0.lpNorm<Eigen::Infinity>()) /
                                            (std::abs(k[r.n]) * x0.lpNorm<Eigen::Infinity>()));
            stable = stable && r.absolute == again.residual[i].absolute;
          }

          if (forced) {
            const auto q = FdeProblem::constant_forcing(alpha, A, VectorXd::Zero(3), tau, N, VectorXd::Ones(3));
            agree_f = std::max(agree_f, trajectory_relative_difference(solve_vop(q).family_trajectory,
                                                                       solve_direct(q).family_trajectory));
          }
        }
      }
    const bool ok = agree_x0 <= 1e-9 && direct_res <= 1e-11 && pin_dev <= 1e-9 && stable;
    return Outcome{ok, "agreement " + sci(agree_x0) + " (x0 = 0: " + sci(agree_f) + "), direct residual " +
                           sci(direct_res) + ", vop residual vs k^{1-alpha}(n)|x0| " + sci(pin_dev) +
                           (stable ? ", stable" : ", NOT stable")};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
