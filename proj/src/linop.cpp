#include "frares/linop.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "frares/errors.hpp"

namespace frares {

namespace {

void require_same_dim(const LinOp& a, const LinOp& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

OpKind wider(OpKind a, OpKind b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

double parse_double(std::string_view text, std::string_view context) {
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw std::invalid_argument(std::string(context) + ": cannot parse number '" + s + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

LinOp LinOp::scalar(double value, Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("LinOp::scalar: dimension must be at least 1");
  LinOp op;
  op.kind_ = OpKind::scalar;
  op.dim_ = dim;
  op.scalar_ = value;
  return op;
}

LinOp LinOp::diagonal(Eigen::VectorXd values) {
  if (values.size() < 1) throw std::invalid_argument("LinOp::diagonal: empty diagonal");
  LinOp op;
  op.kind_ = OpKind::diagonal;
  op.dim_ = values.size();
  op.diag_ = std::move(values);
  return op;
}

LinOp LinOp::dense(Eigen::MatrixXd values) {
  if (values.rows() < 1 || values.rows() != values.cols()) {
    throw std::invalid_argument("LinOp::dense: matrix must be square and non-empty");
  }
  LinOp op;
  op.kind_ = OpKind::dense;
  op.dim_ = values.rows();
  op.dense_ = std::move(values);
  return op;
}

LinOp LinOp::identity_like(const LinOp& like) {
  switch (like.kind_) {
    case OpKind::scalar: return scalar(1.0, like.dim_);
    case OpKind::diagonal: return diagonal(Eigen::VectorXd::Ones(like.dim_));
    case OpKind::dense: return dense(Eigen::MatrixXd::Identity(like.dim_, like.dim_));
  }
  throw std::logic_error("unreachable");
}

LinOp LinOp::zero_like(const LinOp& like) { return 0.0 * identity_like(like); }

double LinOp::scalar_value() const {
  if (kind_ != OpKind::scalar) throw std::logic_error("LinOp: not a scalar operator");
  return scalar_;
}

const Eigen::VectorXd& LinOp::diagonal_values() const {
  if (kind_ != OpKind::diagonal) throw std::logic_error("LinOp: not a diagonal operator");
  return diag_;
}

const Eigen::MatrixXd& LinOp::matrix() const {
  if (kind_ != OpKind::dense) throw std::logic_error("LinOp: not a dense operator");
  return dense_;
}

Eigen::MatrixXd LinOp::to_dense() const {
  switch (kind_) {
    case OpKind::scalar: return scalar_ * Eigen::MatrixXd::Identity(dim_, dim_);
    case OpKind::diagonal: return diag_.asDiagonal();
    case OpKind::dense: return dense_;
  }
  throw std::logic_error("unreachable");
}

LinOp LinOp::as_kind(OpKind kind) const {
  if (kind == kind_) return *this;
  if (static_cast<int>(kind) < static_cast<int>(kind_)) {
    throw std::logic_error("LinOp::as_kind: cannot narrow storage kind");
  }
  LinOp out = kind == OpKind::dense ? dense(to_dense())
                                    : diagonal(Eigen::VectorXd::Constant(dim_, scalar_));
  out.label_ = label_;
  return out;
}

Eigen::VectorXd LinOp::apply(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("LinOp::apply: dimension mismatch");
  switch (kind_) {
    case OpKind::scalar: return scalar_ * x;
    case OpKind::diagonal: return diag_.cwiseProduct(x);
    case OpKind::dense: return dense_ * x;
  }
  throw std::logic_error("unreachable");
}

double LinOp::norm_inf() const {
  switch (kind_) {
    case OpKind::scalar: return std::abs(scalar_);
    case OpKind::diagonal: return diag_.cwiseAbs().maxCoeff();
    case OpKind::dense: return dense_.cwiseAbs().rowwise().sum().maxCoeff();
  }
  throw std::logic_error("unreachable");
}

double LinOp::max_abs() const {
  switch (kind_) {
    case OpKind::scalar: return std::abs(scalar_);
    case OpKind::diagonal: return diag_.cwiseAbs().maxCoeff();
    case OpKind::dense: return dense_.cwiseAbs().maxCoeff();
  }
  throw std::logic_error("unreachable");
}

std::string LinOp::descriptor() const {
  if (!label_.empty()) return label_;
  switch (kind_) {
    case OpKind::scalar: {
      std::ostringstream os;
      os.precision(17);
      os << "scalar:" << scalar_;
      if (dim_ != 1) os << ":" << dim_;
      return os.str();
    }
    case OpKind::diagonal: return "diagonal:" + std::to_string(dim_);
    case OpKind::dense: return "dense:" + std::to_string(dim_) + "x" + std::to_string(dim_);
  }
  throw std::logic_error("unreachable");
}

std::vector<double> LinOp::flattened() const {
  switch (kind_) {
    case OpKind::scalar: return {scalar_};
    case OpKind::diagonal: return {diag_.data(), diag_.data() + diag_.size()};
    case OpKind::dense: {
      std::vector<double> out;
      out.reserve(static_cast<std::size_t>(dim_ * dim_));
      for (Eigen::Index i = 0; i < dim_; ++i)
        for (Eigen::Index j = 0; j < dim_; ++j) out.push_back(dense_(i, j));
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

LinOp& LinOp::operator+=(const LinOp& rhs) {
  require_same_dim(*this, rhs, "LinOp::operator+=");
  const OpKind k = wider(kind_, rhs.kind_);
  if (kind_ != k) *this = as_kind(k);
  const LinOp r = rhs.as_kind(k);
  label_.clear();
  switch (k) {
    case OpKind::scalar: scalar_ += r.scalar_; break;
    case OpKind::diagonal: diag_ += r.diag_; break;
    case OpKind::dense: dense_ += r.dense_; break;
  }
  return *this;
}

LinOp& LinOp::operator-=(const LinOp& rhs) { return *this += (-1.0) * rhs; }

LinOp& LinOp::operator*=(double s) {
  label_.clear();
  switch (kind_) {
    case OpKind::scalar: scalar_ *= s; break;
    case OpKind::diagonal: diag_ *= s; break;
    case OpKind::dense: dense_ *= s; break;
  }
  return *this;
}

LinOp compose(const LinOp& a, const LinOp& b) {
  require_same_dim(a, b, "compose");
  const OpKind k = wider(a.kind(), b.kind());
  switch (k) {
    case OpKind::scalar: return LinOp::scalar(a.scalar_value() * b.scalar_value(), a.dim());
    case OpKind::diagonal:
      return LinOp::diagonal(
          a.as_kind(k).diagonal_values().cwiseProduct(b.as_kind(k).diagonal_values()));
    case OpKind::dense: {
      // Keep scalar/diagonal factors cheap on the dense side.
      if (a.kind() == OpKind::scalar) return a.scalar_value() * b.as_kind(k);
      if (b.kind() == OpKind::scalar) return b.scalar_value() * a.as_kind(k);
      if (a.kind() == OpKind::diagonal)
        return LinOp::dense(a.diagonal_values().asDiagonal() * b.matrix());
      if (b.kind() == OpKind::diagonal)
        return LinOp::dense(a.matrix() * b.diagonal_values().asDiagonal());
      return LinOp::dense(a.matrix() * b.matrix());
    }
  }
  throw std::logic_error("unreachable");
}

LinOp laplacian_1d(Eigen::Index d, double h) {
  if (d < 2) throw std::invalid_argument("laplacian_1d: need d >= 2");
  if (!(h > 0.0)) throw DomainError("laplacian_1d: h must be positive");
  const double w = 1.0 / (h * h);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    m(i, i) = -2.0 * w;
    if (i > 0) m(i, i - 1) = w;
    if (i + 1 < d) m(i, i + 1) = w;
  }
  std::ostringstream label;
  label.precision(17);
  label << "laplacian:" << d << ":" << h;
  return LinOp::dense(std::move(m)).set_label(label.str());
}

LinOp load_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file '" + path.string() + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) row.push_back(parse_double(tok, "matrix file"));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const auto d = static_cast<Eigen::Index>(rows.size());
  if (d == 0) throw std::invalid_argument("matrix file '" + path.string() + "' is empty");
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != d) {
      throw std::invalid_argument("matrix file '" + path.string() + "' is not square");
    }
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rows[i][j];
  }
  return LinOp::dense(std::move(m)).set_label("matrix:" + path.string());
}

LinOp parse_operator(std::string_view descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("operator descriptor '" + std::string(descriptor) +
                                "' has no ':' (expected scalar:, diag:, laplacian:, matrix:)");
  }
  const auto kind = descriptor.substr(0, colon);
  const auto rest = descriptor.substr(colon + 1);
  if (kind == "scalar") {
    const auto parts = split(rest, ':');
    if (parts.size() > 2) throw std::invalid_argument("scalar operator: expected scalar:<v>[:<dim>]");
    const double v = parse_double(parts[0], "scalar operator");
    Eigen::Index dim = 1;
    if (parts.size() == 2) {
      const double d = parse_double(parts[1], "scalar operator dimension");
      if (d < 1 || d != std::floor(d)) throw std::invalid_argument("scalar operator: bad dimension");
      dim = static_cast<Eigen::Index>(d);
    }
    return LinOp::scalar(v, dim).set_label(std::string(descriptor));
  }
  if (kind == "diag") {
    const auto parts = split(rest, ',');
    Eigen::VectorXd d(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) d(i) = parse_double(parts[i], "diag operator");
    return LinOp::diagonal(std::move(d)).set_label(std::string(descriptor));
  }
  if (kind == "laplacian") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2) throw std::invalid_argument("laplacian operator: expected laplacian:<d>:<h>");
    const double d = parse_double(parts[0], "laplacian size");
    if (d != std::floor(d)) throw std::invalid_argument("laplacian operator: size must be an integer");
    const double h = parse_double(parts[1], "laplacian spacing");
    return laplacian_1d(static_cast<Eigen::Index>(d), h).set_label(std::string(descriptor));
  }
  if (kind == "matrix") return load_matrix_file(std::filesystem::path(std::string(rest)));
  throw std::invalid_argument("unknown operator kind '" + std::string(kind) + "'");
}

ResolventHandle::ResolventHandle(LinOp A, double alpha, double tau)
    : A_(std::move(A)), alpha_(alpha), tau_(tau), shift_(std::pow(tau, -alpha)) {
  if (!(alpha > 0.0)) throw DomainError("ResolventHandle: alpha must be positive");
  if (!(tau > 0.0)) throw DomainError("ResolventHandle: tau must be positive");

  auto fail = [&] {
    std::ostringstream os;
    os << "tau^{-alpha} = " << shift_ << " is not in the resolvent set of A (rcond " << rcond_
       << ")";
    throw ResolventSetError(os.str());
  };

  if (A_.kind() == OpKind::dense) {
    const Eigen::MatrixXd shifted =
        shift_ * Eigen::MatrixXd::Identity(A_.dim(), A_.dim()) - A_.matrix();
    lu_.compute(shifted);
    rcond_ = lu_.rcond();
    if (!(rcond_ * kConditionLimit > 1.0)) fail();
    return;
  }

  const Eigen::VectorXd lambdas = A_.kind() == OpKind::scalar
                                      ? Eigen::VectorXd::Constant(1, A_.scalar_value())
                                      : A_.diagonal_values();
  const Eigen::VectorXd gaps = (shift_ - lambdas.array()).matrix();
  const double scale =
      std::max({gaps.cwiseAbs().maxCoeff(), std::abs(shift_), lambdas.cwiseAbs().maxCoeff()});
  rcond_ = gaps.cwiseAbs().minCoeff() / scale;
  if (!(rcond_ * kConditionLimit > 1.0)) fail();
  inverse_diag_ = gaps.cwiseInverse();
}

Eigen::VectorXd ResolventHandle::solve_shifted(const Eigen::VectorXd& b) const {
  if (b.size() != A_.dim()) throw std::invalid_argument("ResolventHandle: dimension mismatch");
  switch (A_.kind()) {
    case OpKind::scalar: return inverse_diag_(0) * b;
    case OpKind::diagonal: return inverse_diag_.cwiseProduct(b);
    case OpKind::dense: return lu_.solve(b);
  }
  throw std::logic_error("unreachable");
}

Eigen::VectorXd ResolventHandle::apply(const Eigen::VectorXd& x) const {
  return shift_ * solve_shifted(x);
}

LinOp ResolventHandle::apply(const LinOp& X) const {
  if (X.dim() != A_.dim()) throw std::invalid_argument("ResolventHandle: dimension mismatch");
  switch (A_.kind()) {
    case OpKind::scalar: return (shift_ * inverse_diag_(0)) * X;
    case OpKind::diagonal:
      return compose(LinOp::diagonal(shift_ * inverse_diag_), X);
    case OpKind::dense: return LinOp::dense(shift_ * lu_.solve(X.to_dense()));
  }
  throw std::logic_error("unreachable");
}

}  // namespace frares
