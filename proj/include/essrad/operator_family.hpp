#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "essrad/finite_matrix.hpp"
#include "essrad/weight_sequence.hpp"
#include "essrad/weight_vector.hpp"

namespace essrad {

/// One diagonal of an infinite matrix: entry (i, i + offset) = weights(i),
/// rows and columns indexed from 1.
struct Band {
  std::int64_t offset;
  WeightSequence weights;
};

/// Infinite nonnegative matrix on l^2 described by finitely many bands plus
/// a finite block in the top-left corner. Bands are kept sorted by offset
/// with distinct offsets. Bounded by construction: finitely many bands, each
/// with finite sup.
class OperatorFamily {
 public:
  OperatorFamily(std::vector<Band> bands, std::optional<FiniteMatrix> corner = std::nullopt);

  static OperatorFamily shift(WeightSequence w, std::int64_t offset = 1);
  static OperatorFamily diagonal(WeightSequence w);
  static OperatorFamily finite_rank(FiniteMatrix corner);
  static OperatorFamily identity();

  const std::vector<Band>& bands() const { return bands_; }
  const std::optional<FiniteMatrix>& corner() const { return corner_; }
  /// Side length of the corner block (0 when absent).
  std::size_t support() const { return corner_ ? corner_->rows() : 0; }
  std::int64_t max_abs_offset() const;
  const Band* band(std::int64_t offset) const;

  /// Entry (i, j), 1-based; 0 outside the matrix.
  double entry(std::int64_t i, std::int64_t j) const;
  /// Entry (i, j) of the banded part only.
  double band_entry(std::int64_t i, std::int64_t j) const;
  /// Total expression size over all bands.
  std::size_t complexity() const;

  /// Cap on complexity() for results of algebra; exceeding it throws
  /// ClosureOverflow.
  static constexpr std::size_t max_complexity = 200000;
  static constexpr std::size_t max_support = 512;

 private:
  std::vector<Band> bands_;
  std::optional<FiniteMatrix> corner_;
};

bool compatible(const OperatorFamily&, const OperatorFamily&);

OperatorFamily hadamard_product(const OperatorFamily& a, const OperatorFamily& b);
OperatorFamily hadamard_power(const OperatorFamily& a, double t);
OperatorFamily weighted_geometric_mean(std::span<const OperatorFamily> as, const WeightVector& w);
OperatorFamily matrix_product(const OperatorFamily& a, const OperatorFamily& b);
OperatorFamily matrix_sum(const OperatorFamily& a, const OperatorFamily& b);
OperatorFamily scale(const OperatorFamily& a, double c);
OperatorFamily adjoint(const OperatorFamily& a);

/// Top-left n x n block P_n A P_n.
FiniteMatrix truncate(const OperatorFamily& a, std::size_t n);
/// Upper bound on the l^2 norm of the rows i >= n (Schur test on the bands
/// plus the Frobenius norm of the corner rows).
double tail_bound(const OperatorFamily& a, std::int64_t n);
/// Lower bound on inf over rows i >= n of the summed band weights; the
/// essential norm of a nonnegative banded operator is at least this.
double tail_floor(const OperatorFamily& a, std::int64_t n);
double entrywise_sup(const OperatorFamily& a);

}  // namespace essrad
