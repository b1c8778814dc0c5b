#pragma once

#include <vector>

namespace essrad {

enum class WeightRegime { sum_eq_one, sum_ge_one };

/// Positive exponents alpha_1..alpha_m for Hadamard weighted means.
class WeightVector {
 public:
  WeightVector(std::vector<double> weights, WeightRegime regime);

  /// alpha_j = 1/m for all j.
  static WeightVector uniform(std::size_t m);
  /// All weights equal to a, regime chosen from the sum m*a.
  static WeightVector repeated(std::size_t m, double a);
  /// Regime inferred from the sum (sum_eq_one within 1e-12, else sum_ge_one).
  static WeightVector infer(std::vector<double> weights);

  const std::vector<double>& weights() const { return weights_; }
  WeightRegime regime() const { return regime_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t k) const { return weights_[k]; }
  double sum() const;

 private:
  std::vector<double> weights_;
  WeightRegime regime_;
};

}  // namespace essrad
