#include "frares/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frares/errors.hpp"
#include "frares/identities.hpp"
#include "frares/io.hpp"
#include "frares/kernels.hpp"
#include "frares/resolvent.hpp"
#include "frares/solver.hpp"

namespace frares::cli {

namespace {

// Writes to --out when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), stream_(&fallback) {
    if (!path_.empty()) {
      file_.open(path_, std::ios::binary);
      if (!file_) throw IoError("cannot open output file '" + path_ + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  bool to_file() const { return !path_.empty(); }
  const std::string& path() const { return path_; }
  void close() {
    stream_->flush();
    if (!*stream_) throw IoError("write failed for '" + (path_.empty() ? "<stdout>" : path_) + "'");
    if (file_.is_open()) file_.close();
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_;
};

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw IoError("write failed for '" + path + "'");
}

struct Output {
  std::string path;
  std::string format = "csv";
};

void add_output_options(CLI::App* cmd, Output& o) {
  cmd->add_option("-o,--out", o.path, "Output file (default: stdout)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

// CSV to the sink (plus a JSON sidecar next to a file), or JSON only.
template <class WriteCsv>
void emit(const Output& o, std::ostream& out, const nlohmann::json& meta, WriteCsv&& write_csv) {
  Sink sink(o.path, out);
  if (o.format == "json") {
    sink.stream() << meta.dump(2) << '\n';
  } else {
    write_csv(sink.stream());
    if (sink.to_file()) write_text_file(sink.path() + ".json", meta.dump(2) + "\n");
  }
  sink.close();
}

std::optional<double> env_tolerance() {
  const char* raw = std::getenv("FRARES_TOL");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::strlen(raw) || !(v > 0.0)) {
    throw std::invalid_argument(std::string("FRARES_TOL must be a positive number, got '") + raw + "'");
  }
  return v;
}

std::string fmt(double v) { return io::format_real(v); }

struct VerifyConfig {
  std::vector<std::string> suites{"all"};
  std::string op = "scalar:-1";
  double alpha = 1.5;
  double beta = 1.0;
  double tau = 0.1;
  std::size_t n = 16;
  double z = 2.0;
  std::size_t z_terms = 200;
  double omega = -1.0;
  std::optional<double> tol;
};

class Report {
 public:
  Report(std::ostream& out, std::optional<double> tol_override)
      : out_(out), override_(tol_override) {
    out_ << "identity,residual,tolerance,status\n";
  }
  double tol(double def) const { return override_.value_or(def); }
  void check(const std::string& name, double residual, double tolerance) {
    const bool ok = residual <= tolerance;
    line(name, residual, tolerance, ok ? "PASS" : "FAIL");
    all_ok_ = all_ok_ && ok;
  }
  void line(const std::string& name, double residual, double tolerance, const std::string& status) {
    out_ << name << ',' << fmt(residual) << ',' << fmt(tolerance) << ',' << status << '\n';
    if (status != "PASS" && status != "SKIP") all_ok_ = false;
  }
  bool ok() const { return all_ok_; }

 private:
  std::ostream& out_;
  std::optional<double> override_;
  bool all_ok_ = true;
};

bool wants(const VerifyConfig& c, const std::string& suite) {
  for (const auto& s : c.suites)
    if (s == "all" || s == suite) return true;
  return false;
}

int run_verify(const VerifyConfig& c, std::ostream& out) {
  Report rep(out, c.tol ? c.tol : env_tolerance());
  const LinOp A = parse_operator(c.op);

  if (wants(c, "semigroup")) {
    const auto ka = kernel_seq(c.alpha, c.tau, c.n);
    const auto kb = kernel_seq(c.beta, c.tau, c.n);
    const auto kab = kernel_seq(c.alpha + c.beta, c.tau, c.n);
    const auto cv = conv(ka.values, kb.values);
    double worst = 0.0;
    for (std::size_t i = 0; i <= c.n; ++i) {
      worst = std::max(worst, std::abs(c.tau * cv[i] - kab[i]) / (1.0 + std::abs(kab[i])));
    }
    rep.check("kernel_semigroup", worst, rep.tol(1e-10));
  }

  if (wants(c, "rowsum")) {
    const auto table = coeff_table(c.alpha, c.beta, c.tau, c.n);
    const auto kb = kernel_seq(c.beta, c.tau, c.n);
    double worst = 0.0;
    for (std::size_t i = 0; i <= c.n; ++i) {
      worst = std::max(worst, std::abs(table.row_sum(i) - kb[i]) / std::abs(kb[i]));
    }
    rep.check("coeff_row_sum", worst, rep.tol(1e-10));
  }

  std::optional<ResolventFamily> recursive;
  auto get_recursive = [&]() -> const ResolventFamily& {
    if (!recursive) recursive = family_recursive(A, c.alpha, c.beta, c.tau, c.n);
    return *recursive;
  };

  if (wants(c, "equivalence")) {
    const auto table = coeff_table(c.alpha, c.beta, c.tau, c.n);
    const auto expl = family_explicit(A, table, c.n);
    rep.check("explicit_vs_recursive", max_relative_difference(expl, get_recursive()), rep.tol(1e-8));
    try {
      const auto series = family_series(A, c.alpha, c.beta, c.tau, c.n, 1e-14);
      rep.check("series_vs_recursive", max_relative_difference(series, get_recursive()), rep.tol(1e-8));
    } catch (const HypothesisError&) {
      rep.line("series_vs_recursive", std::nan(""), rep.tol(1e-8), "SKIP");
    }
  }

  if (wants(c, "resolvent")) {
    const auto res = resolvent_equation_residuals(get_recursive());
    rep.check("resolvent_equation", *std::max_element(res.begin(), res.end()), rep.tol(1e-10));
    rep.check("commutation", commutation_residual(get_recursive()), rep.tol(1e-10));
  }

  if (wants(c, "functional")) {
    double worst = 0.0;
    for (std::size_t m = 0; m <= c.n; ++m)
      for (std::size_t n = 0; n <= c.n; ++n)
        worst = std::max(worst, check_functional_equation(get_recursive(), m, n).relative());
    rep.check("functional_equation", worst, rep.tol(1e-9));
  }

  if (wants(c, "ztransform")) {
    const double bound = rep.tol(1e-6);
    auto report_z = [&](const std::string& name, const ZTransformCheck& z) {
      if (!z.certified) {
        rep.line(name, z.residual, bound, "INCONCLUSIVE");
      } else {
        rep.line(name, z.residual, bound, z.passed(bound) ? "PASS" : "FAIL");
      }
    };
    report_z("ztransform_kernel", check_kernel_ztransform(c.alpha, c.tau, c.z, c.z_terms));
    const auto fam = family_recursive(A, c.alpha, c.beta, c.tau, c.z_terms);
    report_z("ztransform_family", check_ztransform(fam, c.z, Eigen::VectorXd::Ones(A.dim())));
  }

  if (wants(c, "subordination")) {
    const auto quad = subordinate_exponential(c.omega, c.tau, c.n);
    const auto be = family_recursive(LinOp::scalar(c.omega), 1.0, 1.0, c.tau, c.n);
    double closed_err = 0.0;
    double family_err = 0.0;
    for (std::size_t i = 0; i <= c.n; ++i) {
      const double closed = std::pow(1.0 - c.omega * c.tau, -static_cast<double>(i + 1));
      closed_err = std::max(closed_err, std::abs(quad[i] - closed) / closed);
      family_err = std::max(family_err, std::abs(quad[i] - be[i].scalar_value()) / closed);
    }
    rep.check("subordination_closed_form", closed_err, rep.tol(1e-8));
    rep.check("subordination_vs_family", family_err, rep.tol(1e-8));
  }

  return rep.ok() ? kSuccess : kToleranceFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete fractional resolvent families and Caputo difference equations", "frares"};
  app.require_subcommand(1);

  Output o_kernels, o_coeffs, o_resolvent, o_solve, o_ml;

  // kernels
  double k_alpha = 0, k_tau = 0;
  std::size_t k_n = 0;
  auto* kernels = app.add_subcommand("kernels", "Kernel sequence k_tau^alpha(0..N)");
  kernels->add_option("--alpha", k_alpha, "Order")->required()->check(CLI::PositiveNumber);
  kernels->add_option("--tau", k_tau, "Step size")->required()->check(CLI::PositiveNumber);
  kernels->add_option("-n,--n", k_n, "Last index N")->required();
  add_output_options(kernels, o_kernels);

  // coeffs
  double c_alpha = 0, c_beta = 0, c_tau = 0;
  std::size_t c_n = 0;
  auto* coeffs = app.add_subcommand("coeffs", "Representation coefficients a_{n,l}");
  coeffs->add_option("--alpha", c_alpha)->required()->check(CLI::PositiveNumber);
  coeffs->add_option("--beta", c_beta)->required()->check(CLI::PositiveNumber);
  coeffs->add_option("--tau", c_tau)->required()->check(CLI::PositiveNumber);
  coeffs->add_option("-n,--n", c_n)->required();
  add_output_options(coeffs, o_coeffs);

  // resolvent
  std::string r_op, r_method = "recursive";
  double r_alpha = 0, r_beta = 0, r_tau = 0, r_tol = 1e-12;
  std::size_t r_n = 0;
  auto* resolvent = app.add_subcommand("resolvent", "Construct a resolvent family S^0..S^N");
  resolvent->add_option("--op", r_op, "Operator: scalar:<v>, diag:<v,...>, laplacian:<d>:<h>, matrix:<file>")
      ->required();
  resolvent->add_option("--alpha", r_alpha)->required()->check(CLI::PositiveNumber);
  resolvent->add_option("--beta", r_beta)->required()->check(CLI::PositiveNumber);
  resolvent->add_option("--tau", r_tau)->required()->check(CLI::PositiveNumber);
  resolvent->add_option("-n,--n", r_n)->required();
  resolvent->add_option("--method", r_method)
      ->check(CLI::IsMember({"explicit", "recursive", "series", "all"}))
      ->capture_default_str();
  resolvent->add_option("--tol", r_tol, "Series truncation tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output_options(resolvent, o_resolvent);

  // verify
  VerifyConfig vc;
  auto* verify = app.add_subcommand("verify", "Check identities; exit 0 iff all pass");
  verify->add_option("--suite", vc.suites, "Suites to run")
      ->check(CLI::IsMember({"all", "semigroup", "rowsum", "equivalence", "resolvent", "functional",
                             "ztransform", "subordination"}))
      ->capture_default_str();
  verify->add_option("--op", vc.op)->capture_default_str();
  verify->add_option("--alpha", vc.alpha)->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--beta", vc.beta)->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--tau", vc.tau)->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("-n,--n", vc.n)->capture_default_str();
  verify->add_option("--z", vc.z, "Real evaluation point > 1")
      ->check(CLI::Range(1.0 + 1e-12, 1e300))
      ->capture_default_str();
  verify->add_option("--z-terms", vc.z_terms)->capture_default_str();
  verify->add_option("--omega", vc.omega, "Exponent for the subordination check")->capture_default_str();
  verify->add_option("--tol", vc.tol, "Override every tolerance (also FRARES_TOL)")
      ->check(CLI::PositiveNumber);

  // solve
  std::string s_problem;
  bool s_no_direct = false;
  auto* solve = app.add_subcommand("solve", "Solve a Caputo difference IVP from a JSON problem file");
  solve->add_option("--problem", s_problem)->required();
  solve->add_flag("--no-direct", s_no_direct, "Skip the implicit-stepping cross-check");
  add_output_options(solve, o_solve);

  // compare-ml
  double m_rho = 1.0, m_alpha = 0, m_beta = 0;
  std::size_t m_n = 100;
  std::string m_plot;
  bool m_refine = false;
  auto* compare = app.add_subcommand("compare-ml", "Compare S^n against t^{beta-1} E_{alpha,beta}(-rho t^alpha)");
  compare->add_option("--rho", m_rho)->check(CLI::PositiveNumber)->capture_default_str();
  compare->add_option("--alpha", m_alpha)->required()->check(CLI::PositiveNumber);
  compare->add_option("--beta", m_beta)->required()->check(CLI::PositiveNumber);
  compare->add_option("-n,--n", m_n)->check(CLI::PositiveNumber)->capture_default_str();
  compare->add_option("--plot", m_plot, "gnuplot script path (default: <out>.gp)");
  compare->add_flag("--refine", m_refine, "Also run with 2N and require no larger error on the shared grid");
  add_output_options(compare, o_ml);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (kernels->parsed()) {
      const auto k = kernel_seq(k_alpha, k_tau, k_n);
      nlohmann::json meta{{"alpha", k_alpha}, {"tau", k_tau}, {"N", k_n}};
      emit(o_kernels, out, meta, [&](std::ostream& s) { io::write_kernel_csv(s, k); });
      return kSuccess;
    }

    if (coeffs->parsed()) {
      const auto table = coeff_table(c_alpha, c_beta, c_tau, c_n);
      const auto kb = kernel_seq(c_beta, c_tau, c_n);
      double worst = 0.0;
      for (std::size_t i = 0; i <= c_n; ++i) worst = std::max(worst, std::abs(table.row_sum(i) - kb[i]) / kb[i]);
      nlohmann::json meta{{"alpha", c_alpha}, {"beta", c_beta}, {"tau", c_tau}, {"N", c_n},
                          {"max_row_sum_relative_error", worst}};
      emit(o_coeffs, out, meta, [&](std::ostream& s) { io::write_coeff_csv(s, table); });
      return kSuccess;
    }

    if (resolvent->parsed()) {
      const LinOp A = parse_operator(r_op);
      std::optional<ResolventFamily> expl, rec, ser;
      std::string series_note;
      if (r_method == "explicit" || r_method == "all") {
        expl = family_explicit(A, coeff_table(r_alpha, r_beta, r_tau, r_n), r_n);
      }
      if (r_method == "recursive" || r_method == "all") {
        rec = family_recursive(A, r_alpha, r_beta, r_tau, r_n);
      }
      if (r_method == "series") ser = family_series(A, r_alpha, r_beta, r_tau, r_n, r_tol);
      if (r_method == "all") {
        try {
          ser = family_series(A, r_alpha, r_beta, r_tau, r_n, r_tol);
        } catch (const HypothesisError& e) {
          series_note = e.what();
        }
      }

      const ResolventFamily& main = rec ? *rec : expl ? *expl : *ser;
      std::vector<io::ExtraColumn> extra;
      const auto residuals = resolvent_equation_residuals(main);
      extra.emplace_back("residual", residuals);
      nlohmann::json meta = io::family_metadata(main);
      meta["max_resolvent_residual"] = *std::max_element(residuals.begin(), residuals.end());

      auto per_n = [&](const ResolventFamily& a, const ResolventFamily& b) {
        std::vector<double> d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
          d[i] = (a[i] - b[i]).max_abs() / std::max(b[i].max_abs(), std::numeric_limits<double>::min());
        }
        return d;
      };
      if (r_method == "all") {
        meta["method"] = "all";
        nlohmann::json diffs;
        auto add_pair = [&](const std::string& name, const ResolventFamily& a, const ResolventFamily& b) {
          const auto d = per_n(a, b);
          const double mx = *std::max_element(d.begin(), d.end());
          extra.emplace_back("reldiff_" + name, d);
          diffs[name] = mx;
          err << "max relative difference " << name << ": " << fmt(mx) << '\n';
        };
        add_pair("explicit_recursive", *expl, *rec);
        if (ser) {
          add_pair("series_recursive", *ser, *rec);
          add_pair("series_explicit", *ser, *expl);
        } else {
          meta["series_skipped"] = series_note;
          err << "series construction skipped: " << series_note << '\n';
        }
        meta["pairwise_max_relative_difference"] = diffs;
      }
      err << "max resolvent-equation residual: " << fmt(meta["max_resolvent_residual"].get<double>()) << '\n';
      emit(o_resolvent, out, meta, [&](std::ostream& s) { io::write_family_csv(s, main, extra); });
      return kSuccess;
    }

    if (verify->parsed()) return run_verify(vc, out);

    if (solve->parsed()) {
      const auto problem = io::load_problem(s_problem);
      const auto sol = solve_vop(problem);
      nlohmann::json meta{{"alpha", problem.alpha()},
                          {"tau", problem.tau()},
                          {"N", problem.horizon()},
                          {"operator", problem.generator().descriptor()},
                          {"dimension", problem.generator().dim()},
                          {"method", "vop"}};
      double vop_res = 0.0;
      for (const auto& r : sol.residual) vop_res = std::max(vop_res, r.absolute);
      meta["max_residual_vop"] = vop_res;
      err << "variation-of-parameters residual (max abs, n >= 2): " << fmt(vop_res) << '\n';
      if (!s_no_direct) {
        const auto direct = solve_direct(problem);
        double direct_res = 0.0;
        for (const auto& r : direct.residual) direct_res = std::max(direct_res, r.relative);
        const double agreement =
            trajectory_relative_difference(sol.family_trajectory, direct.family_trajectory);
        meta["max_relative_residual_direct"] = direct_res;
        meta["vop_direct_relative_difference"] = agreement;
        err << "direct residual (max relative, n >= 2): " << fmt(direct_res) << '\n'
            << "vop/direct relative difference: " << fmt(agreement) << '\n';
      }
      emit(o_solve, out, meta, [&](std::ostream& s) { io::write_solution_csv(s, sol, problem.tau()); });
      return kSuccess;
    }

    if (compare->parsed()) {
      const auto cmp = compare_mittag_leffler(m_rho, m_alpha, m_beta, m_n);
      nlohmann::json meta{{"rho", m_rho}, {"alpha", m_alpha}, {"beta", m_beta}, {"N", m_n},
                          {"generator", -m_rho}, {"max_error", cmp.max_error}};
      err << "max |S^n - e(t_n)| over n >= 1: " << fmt(cmp.max_error) << '\n';
      int code = kSuccess;
      if (m_refine) {
        const auto fine = compare_mittag_leffler(m_rho, m_alpha, m_beta, 2 * m_n);
        const double shared = max_error_on_grid(fine, m_n);
        meta["refined_N"] = 2 * m_n;
        meta["refined_max_error_shared_grid"] = shared;
        err << "max error with N = " << 2 * m_n << " on the shared grid: " << fmt(shared) << '\n';
        if (shared > cmp.max_error) code = kToleranceFailure;
      }
      emit(o_ml, out, meta, [&](std::ostream& s) { io::write_mittag_leffler_csv(s, cmp); });
      const std::string plot = !m_plot.empty() ? m_plot : (o_ml.path.empty() ? "" : o_ml.path + ".gp");
      if (!plot.empty()) {
        write_text_file(plot, io::gnuplot_script(o_ml.path.empty() ? "data.csv" : o_ml.path, cmp));
      }
      return code;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ResolventSetError& e) {
    err << "error: " << e.what() << '\n';
    return kToleranceFailure;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kToleranceFailure;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kToleranceFailure;
  }
  return kUsageError;
}

}  // namespace frares::cli
