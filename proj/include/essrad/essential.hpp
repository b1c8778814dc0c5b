#pragma once

#include <optional>
#include <vector>

#include "essrad/bracket.hpp"
#include "essrad/operator_family.hpp"

namespace essrad {

struct GammaOptions {
  double tol = 1e-9;
  /// Tail rows are examined at n = 2^k for k = 0..k_max.
  int k_max = 40;
};

struct EssentialOptions {
  int j_max = 6;
  double tol = 1e-9;
  GammaOptions gamma{};
};

/// Bracket for the Hausdorff measure of noncompactness on l^2. The upper end
/// is the smallest tail-row norm bound ||Q_n A|| along n = 2^k; the lower end
/// is the essential norm of the Toeplitz operator built from per-band tail
/// infima, which A dominates up to a compact perturbation.
Bracket hausdorff_mnc(const OperatorFamily& a, const GammaOptions& opt = {});

/// Per-power upper estimates gamma(A^j)^(1/j), j = 1..j_max (diagnostics).
struct EssentialDiagnostics {
  std::vector<double> power_bounds;
};

/// Bracket for rho_ess(A) = inf_j gamma(A^j)^(1/j). The lower end comes from
/// the analytic oracle when one applies, and otherwise from the Toeplitz
/// floor of the banded part.
Bracket essential_spectral_radius(const OperatorFamily& a, const EssentialOptions& opt = {},
                                  EssentialDiagnostics* diag = nullptr);

/// Exact rho_ess for a single band (any offset, including the diagonal) or a
/// purely finite-rank family, plus any finite-rank corner. Empty otherwise.
std::optional<double> oracle_ess_radius(const OperatorFamily& a);

/// sqrt(rho_ess(A* A)); an independent route to gamma(A) on l^2.
Bracket gamma_via_star(const OperatorFamily& a, const EssentialOptions& opt = {});

}  // namespace essrad
