#include "essrad/essential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "essrad/errors.hpp"

namespace essrad {

Bracket hausdorff_mnc(const OperatorFamily& a, const GammaOptions& opt) {
  if (a.bands().empty()) return exact(0.0, "finite_rank");
  double hi = std::numeric_limits<double>::infinity();
  double lo = 0.0;
  bool converged = false;
  const std::int64_t reach = a.max_abs_offset();
  for (int k = 0; k <= opt.k_max; ++k) {
    const std::int64_t n = std::int64_t{1} << k;
    hi = std::min(hi, tail_bound(a, n));
    // Rows beyond the widest offset see every band in full.
    if (n > reach) lo = std::max(lo, tail_floor(a, n));
    if (hi - lo <= opt.tol * std::max(1.0, hi)) {
      converged = true;
      break;
    }
  }
  return Bracket{std::min(lo, hi), hi, "tail_rows", !converged};
}

std::optional<double> oracle_ess_radius(const OperatorFamily& a) {
  if (a.bands().empty()) return 0.0;
  if (a.bands().size() == 1) return a.bands().front().weights.limit();
  return std::nullopt;
}

Bracket essential_spectral_radius(const OperatorFamily& a, const EssentialOptions& opt, EssentialDiagnostics* diag) {
  if (opt.j_max < 1) throw DomainError("essential_spectral_radius requires j_max >= 1");
  const Bracket g1 = hausdorff_mnc(a, opt.gamma);
  const auto oracle = oracle_ess_radius(a);
  double lo = std::max(g1.lo, oracle.value_or(0.0));
  double hi = g1.hi;
  bool flagged = false;
  if (diag) diag->power_bounds.assign(1, g1.hi);

  OperatorFamily power = a;
  for (int j = 2; j <= opt.j_max && hi - lo > opt.tol * std::max(1.0, hi); ++j) {
    try {
      power = matrix_product(power, a);
    } catch (const ClosureOverflow&) {
      flagged = true;
      break;
    }
    const double bound = std::pow(hausdorff_mnc(power, opt.gamma).hi, 1.0 / j);
    if (diag) diag->power_bounds.push_back(bound);
    hi = std::min(hi, bound);
  }
  // The oracle is exact and the tail bounds are padded outward, so a crossing
  // can only come from rounding in the last digit.
  lo = std::min(lo, hi);
  flagged = flagged || hi - lo > opt.tol * std::max(1.0, hi);
  return Bracket{lo, hi, oracle ? "oracle+gamma_powers" : "toeplitz_floor+gamma_powers", flagged};
}

Bracket gamma_via_star(const OperatorFamily& a, const EssentialOptions& opt) {
  const Bracket r = essential_spectral_radius(matrix_product(adjoint(a), a), opt);
  return Bracket{std::sqrt(r.lo), std::sqrt(r.hi), "sqrt_ess_star", r.flagged};
}

}  // namespace essrad
