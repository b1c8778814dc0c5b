#pragma once

#include <random>
#include <vector>

#include "essrad/finite_matrix.hpp"
#include "essrad/operator_family.hpp"
#include "oracles.hpp"

namespace testing_support {

inline oracle::Mat to_mat(const essrad::FiniteMatrix& a) {
  oracle::Mat m(a.rows(), std::vector<double>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  return m;
}

inline essrad::FiniteMatrix random_matrix(std::mt19937_64& g, std::size_t n, double zero_prob = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> e(n * n);
  for (auto& x : e) {
    const double keep = u(g);
    x = keep < zero_prob ? 0.0 : u(g);
  }
  return essrad::FiniteMatrix(n, n, e);
}

/// Weighted shift or diagonal with w(i) = c + a / i.
inline essrad::OperatorFamily random_family(std::mt19937_64& g, int kind) {
  std::uniform_real_distribution<double> uc(0.5, 2.0), ua(-0.4, 1.0), u(0.0, 1.0);
  const double c = uc(g), a = ua(g);
  const auto w = essrad::WeightSequence::rational({a, c}, {0.0, 1.0});
  if (kind == 0) return essrad::OperatorFamily::shift(w, 1);
  if (kind == 1) return essrad::OperatorFamily::diagonal(w);
  std::vector<double> e(9);
  for (auto& x : e) x = u(g);
  return essrad::matrix_sum(essrad::OperatorFamily::shift(w, 1),
                            essrad::OperatorFamily::finite_rank(essrad::FiniteMatrix(3, 3, e)));
}

}  // namespace testing_support
