#include "frares/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "frares/errors.hpp"

namespace frares::io {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::sep() {
  if (written_ > 0) out_ << ',';
  ++written_;
}

CsvWriter& CsvWriter::index(std::size_t n) {
  sep();
  out_ << n;
  return *this;
}

CsvWriter& CsvWriter::value(double v) {
  sep();
  out_ << format_real(v);
  return *this;
}

CsvWriter& CsvWriter::values(std::span<const double> vs) {
  for (double v : vs) value(v);
  return *this;
}

void CsvWriter::end_row() {
  if (written_ != columns_) throw std::logic_error("CsvWriter: row width differs from header");
  out_ << '\n';
  written_ = 0;
}

void write_kernel_csv(std::ostream& out, const KernelSeq& k) {
  CsvWriter w(out, {"n", "k"});
  for (std::size_t n = 0; n < k.size(); ++n) {
    w.index(n).value(k[n]);
    w.end_row();
  }
}

void write_coeff_csv(std::ostream& out, const CoeffTable& table) {
  CsvWriter w(out, {"n", "l", "a"});
  for (std::size_t n = 0; n <= table.max_index(); ++n) {
    for (std::size_t l = 1; l <= n + 1; ++l) {
      w.index(n).index(l).value(table(n, l));
      w.end_row();
    }
  }
}

namespace {

std::vector<std::string> entry_names(const LinOp& op, const std::string& stem) {
  std::vector<std::string> names;
  switch (op.kind()) {
    case OpKind::scalar: names.push_back(stem); break;
    case OpKind::diagonal:
      for (Eigen::Index i = 0; i < op.dim(); ++i) names.push_back(stem + "_" + std::to_string(i));
      break;
    case OpKind::dense:
      for (Eigen::Index i = 0; i < op.dim(); ++i)
        for (Eigen::Index j = 0; j < op.dim(); ++j)
          names.push_back(stem + "_" + std::to_string(i) + "_" + std::to_string(j));
      break;
  }
  return names;
}

}  // namespace

void write_family_csv(std::ostream& out, const ResolventFamily& family,
                      const std::vector<ExtraColumn>& extra) {
  std::vector<std::string> header{"n", "t"};
  for (auto& name : entry_names(family[0], "s")) header.push_back(std::move(name));
  for (const auto& [name, column] : extra) {
    if (column.size() != family.size()) throw std::invalid_argument("extra column length mismatch");
    header.push_back(name);
  }
  CsvWriter w(out, header);
  for (std::size_t n = 0; n < family.size(); ++n) {
    w.index(n).value(static_cast<double>(n) * family.tau());
    const auto entries = family[n].as_kind(family.generator().kind()).flattened();
    w.values(entries);
    for (const auto& [name, column] : extra) w.value(column[n]);
    w.end_row();
  }
}

nlohmann::json family_metadata(const ResolventFamily& family) {
  nlohmann::json j;
  j["alpha"] = family.alpha();
  j["beta"] = family.beta();
  j["tau"] = family.tau();
  j["N"] = family.max_index();
  j["operator"] = family.generator().descriptor();
  j["dimension"] = family.generator().dim();
  j["method"] = std::string(to_string(family.method()));
  if (family.method() == Construction::series) j["series_terms"] = family.series_terms();
  return j;
}

void write_solution_csv(std::ostream& out, const FdeSolution& sol, double tau) {
  std::vector<std::string> header{"n", "t"};
  const auto d = sol.u.dim();
  for (Eigen::Index i = 0; i < d; ++i) header.push_back("u_" + std::to_string(i));
  for (Eigen::Index i = 0; i < d; ++i) header.push_back("utilde_" + std::to_string(i));
  header.push_back("residual");
  CsvWriter w(out, header);
  for (std::size_t n = 0; n < sol.u.size(); ++n) {
    w.index(n).value(static_cast<double>(n) * tau);
    for (Eigen::Index i = 0; i < d; ++i) w.value(sol.u[n](i));
    for (Eigen::Index i = 0; i < d; ++i) w.value(sol.family_trajectory[n](i));
    w.value(n >= 2 ? sol.residual[n - 2].absolute : std::nan(""));
    w.end_row();
  }
}

void write_mittag_leffler_csv(std::ostream& out, const MittagLefflerComparison& cmp) {
  CsvWriter w(out, {"t", "discrete", "continuous", "abs_error"});
  for (const auto& r : cmp.rows) {
    w.value(r.t).value(r.discrete).value(r.continuous).value(r.abs_error);
    w.end_row();
  }
}

std::string gnuplot_script(const std::string& csv_path, const MittagLefflerComparison& cmp) {
  std::ostringstream os;
  os << "# e_{alpha,beta}(t) = t^(beta-1) E_{alpha,beta}(-rho t^alpha) against S^n\n"
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set xlabel 't'\n"
     << "set xrange [0:1]\n"
     << "set title 'rho = " << cmp.rho << ", alpha = " << cmp.alpha << ", beta = " << cmp.beta
     << ", N = " << cmp.N << "'\n"
     << "plot '" << csv_path << "' every ::2 using 1:3 with lines lw 2 title 'e_{alpha,beta}(t)', \\\n"
     << "     '" << csv_path << "' using 1:2 with points pt 6 title 'S^n'\n";
  return os.str();
}

VecSeq load_forcing_csv(const std::filesystem::path& path, double tau, Eigen::Index dim) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open forcing file '" + path.string() + "'");
  std::vector<Eigen::VectorXd> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> vals;
    std::stringstream ls(line);
    std::string tok;
    bool numeric = true;
    while (std::getline(ls, tok, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(tok, &used));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw std::invalid_argument("forcing file '" + path.string() + "': non-numeric row");
    }
    first = false;
    if (static_cast<Eigen::Index>(vals.size()) != dim) {
      throw std::invalid_argument("forcing file '" + path.string() + "': expected " +
                                  std::to_string(dim) + " columns per row");
    }
    rows.push_back(Eigen::Map<Eigen::VectorXd>(vals.data(), dim));
  }
  if (rows.empty()) throw std::invalid_argument("forcing file '" + path.string() + "' is empty");
  return VecSeq(tau, std::move(rows));
}

FdeProblem parse_problem(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  for (const char* key : {"alpha", "tau", "N", "x0"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("problem: missing field '") + key + "'");
  }
  const double alpha = j.at("alpha").get<double>();
  const double tau = j.at("tau").get<double>();
  const auto N = j.at("N").get<std::size_t>();
  const auto x0v = j.at("x0").get<std::vector<double>>();
  if (x0v.empty()) throw std::invalid_argument("problem: x0 must be non-empty");
  Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(x0v.data(), static_cast<Eigen::Index>(x0v.size()));

  LinOp A = LinOp::scalar(0.0);
  if (j.contains("operator")) {
    A = parse_operator(j.at("operator").get<std::string>());
  } else if (j.contains("matrix_file")) {
    A = load_matrix_file(resolve(j.at("matrix_file").get<std::string>()));
  } else {
    throw std::invalid_argument("problem: need 'operator' or 'matrix_file'");
  }
  if (A.kind() == OpKind::scalar && A.dim() == 1 && x0.size() > 1) {
    A = LinOp::scalar(A.scalar_value(), x0.size()).set_label(A.label());
  }

  const std::string forcing = j.value("forcing", std::string("zero"));
  if (forcing == "zero") return FdeProblem::unforced(alpha, std::move(A), std::move(x0), tau, N);
  if (forcing.rfind("constant:", 0) == 0) {
    std::size_t used = 0;
    const std::string num = forcing.substr(9);
    double c = 0.0;
    try {
      c = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != num.size()) throw std::invalid_argument("problem: bad forcing '" + forcing + "'");
    const Eigen::VectorXd value = Eigen::VectorXd::Constant(x0.size(), c);
    return FdeProblem::constant_forcing(alpha, std::move(A), std::move(x0), tau, N, value);
  }
  const auto d = x0.size();
  return FdeProblem(alpha, std::move(A), std::move(x0), tau, N, load_forcing_csv(resolve(forcing), tau, d));
}

FdeProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open problem file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("problem file '" + path.string() + "': " + e.what());
  }
  return parse_problem(j, path.parent_path());
}

}  // namespace frares::io
