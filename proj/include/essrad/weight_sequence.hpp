#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace essrad {

namespace detail {
struct WeightNode;
}

/// A nonnegative sequence w(1), w(2), ... with a known limit and computable
/// tail envelopes. Leaf kinds are constant, eventually-constant, rational
/// p(i)/q(i) and explicit-prefix-with-limit; closure operations (shift,
/// product, sum, power, scale) build expression trees over the leaves.
///
/// Every kind converges, so limsup == liminf == limit().
/// Indices below 1 evaluate to 0.
class WeightSequence {
 public:
  enum class Kind { constant, eventually_constant, rational, prefix_limit, shift, product, sum, power, scale };

  static WeightSequence constant(double c);
  static WeightSequence eventually_constant(std::vector<double> prefix, double tail);
  /// Coefficients in ascending order: p[0] + p[1] i + ... . Requires
  /// deg p <= deg q, q(i) > 0 and p(i) >= 0 for all i >= 1.
  static WeightSequence rational(std::vector<double> p, std::vector<double> q);
  /// Prefix values for i = 1..P; for i > P the tail relaxes harmonically:
  /// w(i) = L + (w(P) - L) * P / i.
  static WeightSequence prefix_with_limit(std::vector<double> prefix, double limit);

  double operator()(std::int64_t i) const;
  double limit() const;
  double limsup() const { return limit(); }
  double liminf() const { return limit(); }
  /// Upper bound on sup_{i >= n} w(i); non-increasing in n.
  double tail_sup(std::int64_t n) const;
  /// Lower bound on inf_{i >= n} w(i); non-decreasing in n.
  double tail_inf(std::int64_t n) const;
  double sup() const { return tail_sup(1); }

  /// v(i) = w(i + s)
  WeightSequence shifted(std::int64_t s) const;
  WeightSequence pow(double t) const;
  WeightSequence scaled(double c) const;
  friend WeightSequence operator*(const WeightSequence& a, const WeightSequence& b);
  friend WeightSequence operator+(const WeightSequence& a, const WeightSequence& b);

  Kind kind() const;
  /// Number of expression nodes (shared subtrees counted per use).
  std::size_t complexity() const;
  /// True when the sequence is the constant 0.
  bool is_zero() const;
  /// Constant value when kind() == constant.
  double constant_value() const;

  const detail::WeightNode& node() const { return *node_; }

 private:
  explicit WeightSequence(std::shared_ptr<const detail::WeightNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::WeightNode> node_;

  friend WeightSequence make_sequence(std::shared_ptr<const detail::WeightNode>);
};

/// Wraps an existing expression node (used by serializers walking the tree).
WeightSequence make_sequence(std::shared_ptr<const detail::WeightNode> n);

}  // namespace essrad
