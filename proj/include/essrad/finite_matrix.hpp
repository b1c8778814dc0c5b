#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "essrad/weight_vector.hpp"

namespace essrad {

/// Dense matrix with nonnegative entries. Immutable once built.
class FiniteMatrix {
 public:
  FiniteMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  explicit FiniteMatrix(Eigen::MatrixXd m);

  static FiniteMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static FiniteMatrix zeros(std::size_t rows, std::size_t cols);
  static FiniteMatrix ones(std::size_t rows, std::size_t cols);
  static FiniteMatrix identity(std::size_t n);
  static FiniteMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
  bool square() const { return m_.rows() == m_.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Eigen::MatrixXd& eigen() const { return m_; }

  /// Row-major copy of the entries.
  std::vector<double> entries() const;

  friend bool operator==(const FiniteMatrix& a, const FiniteMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_.cols() == b.m_.cols() && a.m_ == b.m_;
  }

 private:
  Eigen::MatrixXd m_;
};

bool compatible(const FiniteMatrix& a, const FiniteMatrix& b);

FiniteMatrix hadamard_product(const FiniteMatrix& a, const FiniteMatrix& b);
/// Entrywise a(i,j)^t with 0^t = 0. Requires t > 0.
FiniteMatrix hadamard_power(const FiniteMatrix& a, double t);
FiniteMatrix weighted_geometric_mean(std::span<const FiniteMatrix> as, const WeightVector& w);
FiniteMatrix matrix_product(const FiniteMatrix& a, const FiniteMatrix& b);
FiniteMatrix matrix_sum(const FiniteMatrix& a, const FiniteMatrix& b);
FiniteMatrix scale(const FiniteMatrix& a, double c);
FiniteMatrix adjoint(const FiniteMatrix& a);

/// Largest entry.
double entrywise_sup(const FiniteMatrix& a);

}  // namespace essrad
