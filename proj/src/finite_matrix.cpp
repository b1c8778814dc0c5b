#include "essrad/finite_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "essrad/errors.hpp"

namespace essrad {

WeightVector::WeightVector(std::vector<double> weights, WeightRegime regime)
    : weights_(std::move(weights)), regime_(regime) {
  if (weights_.empty()) throw DomainError("weight vector must be nonempty");
  for (double a : weights_)
    if (!(a > 0) || !std::isfinite(a)) throw DomainError("weights must be positive and finite");
  const double s = sum();
  if (regime_ == WeightRegime::sum_eq_one && std::abs(s - 1.0) > 1e-12)
    throw DomainError("sum_eq_one weights sum to " + std::to_string(s));
  if (regime_ == WeightRegime::sum_ge_one && s < 1.0 - 1e-12)
    throw DomainError("sum_ge_one weights sum to " + std::to_string(s));
}

WeightVector WeightVector::uniform(std::size_t m) {
  return WeightVector(std::vector<double>(m, 1.0 / static_cast<double>(m)), WeightRegime::sum_eq_one);
}

WeightVector WeightVector::repeated(std::size_t m, double a) {
  return infer(std::vector<double>(m, a));
}

WeightVector WeightVector::infer(std::vector<double> weights) {
  const double s = std::accumulate(weights.begin(), weights.end(), 0.0);
  const auto regime = std::abs(s - 1.0) <= 1e-12 ? WeightRegime::sum_eq_one : WeightRegime::sum_ge_one;
  return WeightVector(std::move(weights), regime);
}

double WeightVector::sum() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

namespace {

void validate(const Eigen::MatrixXd& m) {
  if (m.rows() < 1 || m.cols() < 1) throw ShapeError("matrix must have at least one row and column");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!(m(i, j) >= 0) || !std::isfinite(m(i, j)))
        throw DomainError("matrix entry (" + std::to_string(i) + "," + std::to_string(j) + ") is negative or not finite");
}

void require_same_shape(const FiniteMatrix& a, const FiniteMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError(std::string(op) + ": shape mismatch");
}

}  // namespace

FiniteMatrix::FiniteMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries) {
  if (entries.size() != rows * cols) throw ShapeError("entries length does not match rows*cols");
  m_.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m_(i, j) = entries[i * cols + j];
  validate(m_);
}

FiniteMatrix::FiniteMatrix(Eigen::MatrixXd m) : m_(std::move(m)) { validate(m_); }

FiniteMatrix FiniteMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  std::vector<double> e;
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("ragged matrix rows");
    e.insert(e.end(), row.begin(), row.end());
  }
  return FiniteMatrix(r, c, std::move(e));
}

FiniteMatrix FiniteMatrix::zeros(std::size_t rows, std::size_t cols) {
  return FiniteMatrix(Eigen::MatrixXd::Zero(rows, cols));
}

FiniteMatrix FiniteMatrix::ones(std::size_t rows, std::size_t cols) {
  return FiniteMatrix(Eigen::MatrixXd::Ones(rows, cols));
}

FiniteMatrix FiniteMatrix::identity(std::size_t n) { return FiniteMatrix(Eigen::MatrixXd::Identity(n, n)); }

FiniteMatrix FiniteMatrix::diagonal(std::span<const double> d) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return FiniteMatrix(std::move(m));
}

std::vector<double> FiniteMatrix::entries() const {
  std::vector<double> e;
  e.reserve(rows() * cols());
  for (Eigen::Index i = 0; i < m_.rows(); ++i)
    for (Eigen::Index j = 0; j < m_.cols(); ++j) e.push_back(m_(i, j));
  return e;
}

bool compatible(const FiniteMatrix& a, const FiniteMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols();
}

FiniteMatrix hadamard_product(const FiniteMatrix& a, const FiniteMatrix& b) {
  require_same_shape(a, b, "hadamard_product");
  return FiniteMatrix(a.eigen().cwiseProduct(b.eigen()));
}

FiniteMatrix hadamard_power(const FiniteMatrix& a, double t) {
  if (!(t > 0)) throw DomainError("hadamard_power requires t > 0");
  if (t == 1.0) return a;
  return FiniteMatrix(a.eigen().unaryExpr([t](double x) { return x == 0.0 ? 0.0 : std::pow(x, t); }));
}

FiniteMatrix weighted_geometric_mean(std::span<const FiniteMatrix> as, const WeightVector& w) {
  if (as.empty()) throw ShapeError("weighted_geometric_mean of an empty list");
  if (as.size() != w.size()) throw ShapeError("weighted_geometric_mean: weight count differs from matrix count");
  for (const auto& a : as) require_same_shape(as.front(), a, "weighted_geometric_mean");
  Eigen::MatrixXd out = Eigen::MatrixXd::Ones(as.front().eigen().rows(), as.front().eigen().cols());
  for (std::size_t k = 0; k < as.size(); ++k) out = out.cwiseProduct(hadamard_power(as[k], w[k]).eigen());
  return FiniteMatrix(std::move(out));
}

FiniteMatrix matrix_product(const FiniteMatrix& a, const FiniteMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix_product: inner dimensions differ");
  // Nonnegative inputs cannot produce negative sums, so the invariant holds.
  return FiniteMatrix(Eigen::MatrixXd(a.eigen() * b.eigen()));
}

FiniteMatrix matrix_sum(const FiniteMatrix& a, const FiniteMatrix& b) {
  require_same_shape(a, b, "matrix_sum");
  return FiniteMatrix(Eigen::MatrixXd(a.eigen() + b.eigen()));
}

FiniteMatrix scale(const FiniteMatrix& a, double c) {
  if (!(c >= 0)) throw DomainError("scale requires c >= 0");
  return FiniteMatrix(Eigen::MatrixXd(c * a.eigen()));
}

FiniteMatrix adjoint(const FiniteMatrix& a) { return FiniteMatrix(Eigen::MatrixXd(a.eigen().transpose())); }

double entrywise_sup(const FiniteMatrix& a) { return a.eigen().maxCoeff(); }

}  // namespace essrad
