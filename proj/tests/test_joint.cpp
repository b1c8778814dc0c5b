#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "essrad/joint.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace essrad;
using testing_support::random_matrix;
using testing_support::to_mat;

namespace {

const double phi = (1 + std::sqrt(5.0)) / 2;

MatrixSet golden() {
  return MatrixSet({FiniteMatrix::from_rows({{1, 1}, {0, 1}}), FiniteMatrix::from_rows({{1, 0}, {1, 1}})});
}

MatrixSet random_set(std::mt19937_64& g, std::size_t count, std::size_t n) {
  std::vector<FiniteMatrix> el;
  for (std::size_t k = 0; k < count; ++k) el.push_back(random_matrix(g, n, 0.3));
  return MatrixSet(std::move(el));
}

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_SUITE("joint") {
  TEST_CASE("generalized radius lower bound examples") {
    std::mt19937_64 rng(1);
    const auto a = random_matrix(rng, 4);
    const auto ra = spectral_radius(a);
    const double lb = gen_radius_lb(singleton(a), 3);
    CHECK(lb >= ra.lo * (1 - 1e-12));
    CHECK(lb <= ra.hi * (1 + 1e-12));
    const MatrixSet nil({FiniteMatrix::from_rows({{0, 1}, {0, 0}}), FiniteMatrix::from_rows({{0, 0}, {1, 0}})});
    CHECK(gen_radius_lb(nil, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gen_radius_lb(golden(), 2) == doctest::Approx(phi).epsilon(1e-12));
  }

  TEST_CASE("joint radius upper bound examples") {
    const double d[] = {2.0, 1.0};
    CHECK(joint_radius_ub(singleton(FiniteMatrix::diagonal(d)), 1, SpaceTag::l2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(joint_radius_ub(golden(), 1, SpaceTag::l2) == doctest::Approx(phi).epsilon(1e-12));
    for (double c : {0.3, 1.0, 2.5})
      CHECK(joint_radius_ub(singleton(scale(FiniteMatrix::identity(3), c)), 2, SpaceTag::l1) == doctest::Approx(c).epsilon(1e-12));
  }

  TEST_CASE("branch and bound bracket examples") {
    std::mt19937_64 rng(2);
    const auto a = random_matrix(rng, 5);
    const double ref = oracle::perron_root(to_mat(a));
    const auto s = gripenberg_bracket(singleton(a), 1e-8);
    CHECK(s.lo <= ref * (1 + 1e-12));
    CHECK(s.hi >= ref * (1 - 1e-12));
    CHECK(s.hi - s.lo <= 1e-8);

    const auto start = std::chrono::steady_clock::now();
    const auto g = gripenberg_bracket(golden(), 1e-6);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(g.lo <= phi);
    CHECK(g.hi >= phi);
    CHECK(g.hi - g.lo <= 1e-6);
    CHECK(secs <= 1.0);

    const auto z = gripenberg_bracket(MatrixSet({FiniteMatrix::zeros(2, 2), FiniteMatrix::zeros(2, 2)}), 1e-6);
    CHECK(z.lo == 0.0);
    CHECK(z.hi == 0.0);
  }

  TEST_CASE("levels agree with brute-force enumeration") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
      const auto s = random_set(rng, 2 + rep % 2, 3);
      std::vector<oracle::Mat> raw;
      for (const auto& a : s) raw.push_back(to_mat(a));
      const auto levels = gen_radius_levels(s, 4);
      REQUIRE(levels.size() == 4);
      for (int l = 1; l <= 4; ++l) {
        const double ref = oracle::brute_gen_radius_level(raw, l);
        CHECK(std::pow(levels[l - 1].lo, 1.0 / l) <= ref * (1 + 1e-10) + 1e-300);
        CHECK(std::pow(levels[l - 1].hi, 1.0 / l) >= ref * (1 - 1e-10));
      }
    }
  }

  TEST_CASE("sandwich and monotone refinement") {
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 30; ++rep) {
      const auto s = random_set(rng, 2, 3 + rep % 3);
      double prev_lb = 0, prev_ub = INFINITY;
      for (int m = 1; m <= 5; ++m) {
        const double lb = gen_radius_lb(s, m), ub = joint_radius_ub(s, m, SpaceTag::l2);
        CHECK(lb <= ub + 1e-9);
        CHECK(lb >= prev_lb);
        CHECK(ub <= prev_ub);
        prev_lb = lb;
        prev_ub = ub;
      }
    }
  }

  TEST_CASE("power identity on explored words") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
      const auto s = random_set(rng, 2, 3);
      for (int k = 1; k <= 3; ++k) {
        const int m = 4 / k > 0 ? 4 / k : 1;
        const auto pk = gen_radius_levels(set_power(s, k), m);
        const auto base = gen_radius_levels(s, k * m);
        for (int l = 1; l <= m; ++l) {
          const auto& a = pk[l - 1];
          const auto& b = base[k * l - 1];
          CHECK(close_rel(a.lo, b.lo, 1e-9));
          CHECK(close_rel(a.hi, b.hi, 1e-9));
        }
        // r(S^k) observed through level m equals the k-th power of r(S) observed through multiples of k.
        double via_base = 0;
        for (int l = 1; l <= m; ++l) via_base = std::max(via_base, std::pow(base[k * l - 1].lo, 1.0 / l));
        CHECK(close_rel(gen_radius_lb(set_power(s, k), m), via_base, 1e-9));
      }
    }
  }

  TEST_CASE("cyclic identity") {
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 20; ++rep) {
      const auto p = random_set(rng, 2, 3), q = random_set(rng, 2, 3);
      for (int m = 1; m <= 4; ++m)
        CHECK(close_rel(gen_radius_lb(set_product(p, q), m), gen_radius_lb(set_product(q, p), m), 1e-10));
    }
  }

  TEST_CASE("branch and bound bracket nests inside the enumeration bounds") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
      const auto s = random_set(rng, 2, 3);
      GripenbergOptions opt;
      const auto g = gripenberg_bracket(s, 1e-6, opt);
      const double lb = gen_radius_lb(s, opt.lb_depth), ub = joint_radius_ub(s, opt.ub_depth, opt.space);
      CHECK(g.lo >= lb * (1 - 1e-9));
      CHECK(g.hi <= ub * (1 + 1e-9));
      CHECK(g.lo <= g.hi);
    }
  }

  TEST_CASE("essential set radius examples") {
    for (double c : {0.5, 1.5}) {
      const auto s = singleton(OperatorFamily::shift(WeightSequence::constant(c)));
      CHECK(ess_gen_radius_ub(s) == doctest::Approx(c).epsilon(1e-6));
      CHECK(ess_joint_radius_ub(s) == doctest::Approx(c).epsilon(1e-6));
    }
    const auto fr = singleton(OperatorFamily::finite_rank(FiniteMatrix::ones(3, 3)));
    CHECK(ess_gen_radius_ub(fr) == 0.0);
    CHECK(ess_joint_radius_ub(fr) == 0.0);
    const auto w = WeightSequence::rational({1.0, 1.0}, {0.0, 1.0});
    const auto v = WeightSequence::rational({-0.5, 2.0}, {0.0, 1.0});
    const FamilySet pair({OperatorFamily::diagonal(w), OperatorFamily::diagonal(v)});
    CHECK(ess_joint_radius_ub(pair) == doctest::Approx(2.0).epsilon(1e-6));
    const auto b = ess_set_radius(pair);
    CHECK(b.lo <= 2.0 + 1e-6);
    CHECK(b.hi >= 2.0 - 1e-6);
  }
}
