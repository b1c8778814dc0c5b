#pragma once

#include "essrad/bracket.hpp"
#include "essrad/finite_matrix.hpp"

namespace essrad {

struct SpectralOptions {
  /// Stop once hi - lo <= rel_width * max(1, hi).
  double rel_width = 1e-13;
  /// Brackets wider than flag_width * max(1, hi) are flagged.
  double flag_width = 1e-10;
  /// Number of repeated squarings (effective power 2^max_squarings).
  int max_squarings = 60;
};

/// Perron root bracket from Gelfand squaring and Collatz-Wielandt bounds.
Bracket spectral_radius(const FiniteMatrix& a, const SpectralOptions& opt = {});

/// Operator norm on l^1 (max column sum), l^infty (max row sum) or l^2
/// (square root of the Perron root of A^T A).
Bracket operator_norm(const FiniteMatrix& a, SpaceTag space = SpaceTag::l2, const SpectralOptions& opt = {});

}  // namespace essrad
