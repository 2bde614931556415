#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "frares/calculus.hpp"
#include "frares/identities.hpp"
#include "frares/kernels.hpp"
#include "frares/resolvent.hpp"
#include "frares/solver.hpp"

namespace frares::io {

/// Scientific notation, 17 significant digits, '.' decimal separator.
std::string format_real(double v);

/// Comma-separated rows with a header line; integers print as integers.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  CsvWriter& index(std::size_t n);
  CsvWriter& value(double v);
  CsvWriter& values(std::span<const double> vs);
  void end_row();

 private:
  void sep();
  std::ostream& out_;
  std::size_t columns_;
  std::size_t written_ = 0;
};

void write_kernel_csv(std::ostream& out, const KernelSeq& k);

/// Long format: n, l, a_{n,l}.
void write_coeff_csv(std::ostream& out, const CoeffTable& table);

using ExtraColumn = std::pair<std::string, std::vector<double>>;

/// n, t_n, operator entries (row-major for matrices), then extra columns.
void write_family_csv(std::ostream& out, const ResolventFamily& family,
                      const std::vector<ExtraColumn>& extra = {});

nlohmann::json family_metadata(const ResolventFamily& family);

/// n, t_n, u components, family-trajectory components, residual (nan for n < 2).
void write_solution_csv(std::ostream& out, const FdeSolution& sol, double tau);

/// t_n, S^n, e_{alpha,beta}(t_n), |diff|
void write_mittag_leffler_csv(std::ostream& out, const MittagLefflerComparison& cmp);

/// gnuplot script drawing the continuous curve as a line and the sequence as circles.
std::string gnuplot_script(const std::string& csv_path, const MittagLefflerComparison& cmp);

/// Rows of `dim` reals (an optional non-numeric header line is skipped).
VecSeq load_forcing_csv(const std::filesystem::path& path, double tau, Eigen::Index dim);

/// JSON problem file:
/// {"alpha", "tau", "N", "operator" | "matrix_file", "x0": [...],
///  "forcing": "zero" | "constant:<c>" | "<csv path>"}
/// Relative paths resolve against the problem file's directory.
FdeProblem load_problem(const std::filesystem::path& path);
FdeProblem parse_problem(const nlohmann::json& j, const std::filesystem::path& base_dir);

}  // namespace frares::io
