#include <doctest.h>

#include <cmath>
#include <random>

#include "essrad/essential.hpp"
#include "essrad/finite_matrix.hpp"
#include "essrad/operator_family.hpp"
#include "essrad/spectral.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace essrad;
using testing_support::random_family;
using testing_support::random_matrix;
using testing_support::to_mat;

namespace {

constexpr double ess_tol = 1e-6;

bool overlap(const Bracket& a, const Bracket& b, double tol = ess_tol) {
  return a.lo <= b.hi + tol && b.lo <= a.hi + tol;
}

void check_contains(const Bracket& b, double v, double tol) {
  CHECK(b.lo <= v + tol);
  CHECK(b.hi >= v - tol);
}

WeightSequence one_plus_inverse() { return WeightSequence::rational({1.0, 1.0}, {0.0, 1.0}); }
WeightSequence inverse() { return WeightSequence::rational({1.0}, {0.0, 1.0}); }

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("spectral radius of small matrices") {
    const auto perm = FiniteMatrix::from_rows({{0, 1}, {1, 0}});
    check_contains(spectral_radius(perm), 1.0, 1e-10);
    check_contains(spectral_radius(FiniteMatrix::from_rows({{1, 1}, {0, 1}})), 1.0, 1e-10);
    const double golden_sq = (3 + std::sqrt(5.0)) / 2;
    const auto b = spectral_radius(FiniteMatrix::from_rows({{2, 1}, {1, 1}}));
    check_contains(b, golden_sq, 1e-12);
    CHECK(b.hi - b.lo <= 1e-10 * golden_sq);
    const auto z = spectral_radius(FiniteMatrix::zeros(3, 3));
    CHECK(z.lo == 0.0);
    CHECK(z.hi <= 1e-12);
    const auto nil = spectral_radius(FiniteMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
    CHECK(nil.lo == 0.0);
    CHECK(nil.hi <= 1e-9);
  }

  TEST_CASE("operator norms") {
    const double d[] = {1.0, 2.0};
    check_contains(operator_norm(FiniteMatrix::diagonal(d), SpaceTag::l2), 2.0, 1e-12);
    check_contains(operator_norm(FiniteMatrix::ones(2, 2), SpaceTag::l2), 2.0, 1e-12);
    const auto a = FiniteMatrix::from_rows({{1, 2}, {3, 4}});
    const auto l1 = operator_norm(a, SpaceTag::l1);
    CHECK(l1.lo == 6.0);
    CHECK(l1.hi == 6.0);
    const auto linf = operator_norm(a, SpaceTag::linf);
    CHECK(linf.lo == 7.0);
    CHECK(linf.hi == 7.0);
  }

  TEST_CASE("brackets contain the characteristic-polynomial root for n <= 4") {
    std::mt19937_64 rng(101);
    for (int rep = 0; rep < 200; ++rep) {
      const std::size_t n = 1 + rep % 4;
      const auto a = random_matrix(rng, n, rep % 2 ? 0.4 : 0.0);
      const double ref = oracle::perron_root(to_mat(a));
      const auto b = spectral_radius(a);
      CHECK(b.lo <= b.hi);
      check_contains(b, ref, 1e-10 * std::max(1.0, ref));
      // l2 norm against sqrt of the Perron root of A^T A.
      const auto at = to_mat(adjoint(a));
      const double sv = std::sqrt(oracle::perron_root(oracle::mul(at, to_mat(a))));
      check_contains(operator_norm(a, SpaceTag::l2), sv, 1e-10 * std::max(1.0, sv));
      CHECK(operator_norm(a, SpaceTag::l1).hi == doctest::Approx(oracle::norm_l1(to_mat(a))).epsilon(1e-15));
    }
  }

  TEST_CASE("scale homogeneity of rho") {
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 30; ++rep) {
      const auto a = random_matrix(rng, 5);
      const double c = 0.1 + 0.3 * rep;
      const auto ra = spectral_radius(a), rc = spectral_radius(scale(a, c));
      CHECK(rc.lo <= c * ra.hi * (1 + 1e-12));
      CHECK(c * ra.lo <= rc.hi * (1 + 1e-12));
    }
  }

  TEST_CASE("hausdorff measure examples") {
    const auto g0 = hausdorff_mnc(OperatorFamily::finite_rank(FiniteMatrix::ones(3, 3)));
    CHECK(g0.lo == 0.0);
    CHECK(g0.hi == 0.0);
    const auto gi = hausdorff_mnc(OperatorFamily::identity());
    check_contains(gi, 1.0, ess_tol);
    CHECK(gi.hi - gi.lo <= ess_tol);
    const auto gd = hausdorff_mnc(OperatorFamily::diagonal(inverse()));
    CHECK(gd.lo == 0.0);
    CHECK(gd.hi <= ess_tol);
  }

  TEST_CASE("essential radius examples") {
    const auto r0 = essential_spectral_radius(OperatorFamily::finite_rank(FiniteMatrix::ones(2, 2)));
    CHECK(r0.hi <= ess_tol);
    check_contains(essential_spectral_radius(OperatorFamily::diagonal(one_plus_inverse())), 1.0, ess_tol);
    for (double c : {0.5, 1.0, 1.7}) {
      const auto sw = WeightSequence::prefix_with_limit({3.0, 0.1, 2.0}, c);
      const auto b = essential_spectral_radius(OperatorFamily::shift(sw));
      check_contains(b, c, ess_tol);
      CHECK(b.hi - b.lo <= ess_tol * std::max(1.0, c));
    }
    EssentialDiagnostics diag;
    essential_spectral_radius(OperatorFamily::shift(WeightSequence::constant(2.0)), {}, &diag);
    REQUIRE(!diag.power_bounds.empty());
    CHECK(diag.power_bounds.size() <= 6);
    CHECK(diag.power_bounds[0] == doctest::Approx(2.0).epsilon(ess_tol));
  }

  TEST_CASE("analytic oracle") {
    CHECK(oracle_ess_radius(OperatorFamily::diagonal(WeightSequence::eventually_constant({9, 1}, 3))).value() == 3.0);
    const auto pert = matrix_sum(OperatorFamily::shift(WeightSequence::constant(1.25)),
                                 OperatorFamily::finite_rank(FiniteMatrix::from_rows({{5, 1}, {2, 7}})));
    CHECK(oracle_ess_radius(pert).value() == doctest::Approx(1.25));
    CHECK(oracle_ess_radius(OperatorFamily::diagonal(inverse())).value() == 0.0);
    const auto two_bands = matrix_sum(OperatorFamily::shift(WeightSequence::constant(1.0)),
                                      OperatorFamily::diagonal(WeightSequence::constant(1.0)));
    CHECK_FALSE(oracle_ess_radius(two_bands).has_value());
  }

  TEST_CASE("gamma via the star product") {
    const auto g0 = gamma_via_star(OperatorFamily::finite_rank(FiniteMatrix::ones(2, 2)));
    CHECK(g0.hi <= ess_tol);
    check_contains(gamma_via_star(OperatorFamily::identity()), 1.0, ess_tol);
    check_contains(gamma_via_star(OperatorFamily::shift(WeightSequence::constant(1.5))), 1.5, ess_tol);
  }

  TEST_CASE("gamma submultiplicative, subadditive, scale and adjoint") {
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 24; ++rep) {
      const auto a = random_family(rng, rep % 3), b = random_family(rng, (rep / 3) % 3);
      const auto ga = hausdorff_mnc(a), gb = hausdorff_mnc(b);
      CHECK(ga.lo <= ga.hi);
      CHECK(hausdorff_mnc(matrix_product(a, b)).lo <= ga.hi * gb.hi + ess_tol);
      CHECK(hausdorff_mnc(matrix_sum(a, b)).lo <= ga.hi + gb.hi + ess_tol);

      const double c = 0.25 + 0.5 * (rep % 4);
      const auto gc = hausdorff_mnc(scale(a, c));
      CHECK(gc.lo <= c * ga.hi + ess_tol);
      CHECK(c * ga.lo <= gc.hi + ess_tol);
      const auto rc = essential_spectral_radius(scale(a, c)), ra = essential_spectral_radius(a);
      CHECK(rc.lo <= c * ra.hi + ess_tol);
      CHECK(c * ra.lo <= rc.hi + ess_tol);

      const auto gs = hausdorff_mnc(adjoint(a));
      CHECK(std::abs(gs.lo - ga.lo) <= (gs.hi - gs.lo) + (ga.hi - ga.lo) + ess_tol);
      CHECK(overlap(gs, ga));
    }
  }

  TEST_CASE("gamma monotone under entrywise domination") {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
      const auto w = WeightSequence::rational({u(rng) - 0.3, 0.5 + u(rng)}, {0.0, 1.0});
      const auto extra = WeightSequence::prefix_with_limit({u(rng), u(rng)}, u(rng));
      const std::int64_t off = rep % 3 - 1;
      const auto a = OperatorFamily::shift(w, off), b = OperatorFamily::shift(w + extra, off);
      CHECK(hausdorff_mnc(a).lo <= hausdorff_mnc(b).hi + ess_tol);
    }
  }

  TEST_CASE("compact perturbations leave the essential radius alone") {
    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
      const auto a = random_family(rng, rep % 2);
      std::vector<double> e(16);
      for (auto& x : e) x = 3 * u(rng);
      const auto b = matrix_sum(a, OperatorFamily::finite_rank(FiniteMatrix(4, 4, e)));
      CHECK(overlap(essential_spectral_radius(a), essential_spectral_radius(b)));
    }
  }

  TEST_CASE("tail norms never increase") {
    std::mt19937_64 rng(36);
    for (int rep = 0; rep < 30; ++rep) {
      const auto a = rep % 4 == 3 ? matrix_product(random_family(rng, 2), random_family(rng, 0)) : random_family(rng, rep % 3);
      double prev = tail_bound(a, 1);
      for (std::int64_t n = 2; n <= (std::int64_t{1} << 20); n *= 2) {
        const double t = tail_bound(a, n);
        CHECK(t <= prev);
        prev = t;
      }
    }
  }

  TEST_CASE("two routes to gamma agree") {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 30; ++rep) {
      const auto a = random_family(rng, rep % 3);
      CHECK(overlap(hausdorff_mnc(a), gamma_via_star(a)));
    }
  }

  TEST_CASE("diagonal families: essential radius meets gamma") {
    std::mt19937_64 rng(38);
    for (int rep = 0; rep < 20; ++rep) {
      const auto a = random_family(rng, 1);
      CHECK(overlap(essential_spectral_radius(a), hausdorff_mnc(a)));
    }
  }
}
