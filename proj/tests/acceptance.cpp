// Acceptance checks: one PASS/FAIL line per criterion, exit status 0 only
// when every criterion holds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "essrad/cli.hpp"
#include "essrad/essential.hpp"
#include "essrad/joint.hpp"
#include "essrad/json_io.hpp"
#include "essrad/registry.hpp"
#include "essrad/spectral.hpp"
#include "essrad/sweep.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace essrad;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool ok;
  std::string detail;
};

std::string format(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool overlap(const Bracket& a, const Bracket& b, double tol) { return a.lo <= b.hi + tol && b.lo <= a.hi + tol; }

Outcome finite_sweep() {
  const auto start = Clock::now();
  std::uint64_t trials = 0, fails = 0, inconclusive = 0;
  std::string failing;
  for (const auto* spec : chains_of(Level::finite)) {
    EnsembleSpec ens = default_ensemble(Level::finite, 42);
    ens.min_size = 4;
    ens.max_size = 6;
    const auto res = run_sweep(*spec, ens, 200);
    trials += res.summary.trials;
    fails += res.summary.fail;
    inconclusive += res.summary.inconclusive;
    if (res.summary.fail) failing += " " + spec->id;
  }
  const double secs = seconds_since(start);
  return {fails == 0 && secs <= 300.0,
          format("%llu trials over 16 chains, %llu fail, %llu inconclusive, %.1f s (limit 300 s)%s",
                 static_cast<unsigned long long>(trials), static_cast<unsigned long long>(fails),
                 static_cast<unsigned long long>(inconclusive), secs, failing.c_str())};
}

Outcome essential_sweep() {
  const auto start = Clock::now();
  std::uint64_t trials = 0, fails = 0, inconclusive = 0;
  double worst = 0;
  std::string worst_id;
  for (const auto* spec : chains_of(Level::essential)) {
    const auto res = run_sweep(*spec, default_ensemble(Level::essential, 42), 50);
    trials += res.summary.trials;
    fails += res.summary.fail;
    inconclusive += res.summary.inconclusive;
    const double frac = static_cast<double>(res.summary.inconclusive) / static_cast<double>(res.summary.trials);
    if (frac > worst) {
      worst = frac;
      worst_id = spec->id;
    }
  }
  const double total_frac = static_cast<double>(inconclusive) / static_cast<double>(trials);
  return {fails == 0 && worst <= 0.10,
          format("%llu trials over 21 chains, %llu fail, %llu inconclusive (%.2f%% overall, worst chain %s %.0f%%, "
                 "limit 10%%), %.1f s",
                 static_cast<unsigned long long>(trials), static_cast<unsigned long long>(fails),
                 static_cast<unsigned long long>(inconclusive), 100 * total_frac,
                 worst_id.empty() ? "-" : worst_id.c_str(), 100 * worst, seconds_since(start))};
}

Outcome golden_jsr() {
  const MatrixSet s({FiniteMatrix::from_rows({{1, 1}, {0, 1}}), FiniteMatrix::from_rows({{1, 0}, {1, 1}})});
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const auto start = Clock::now();
  const auto b = gripenberg_bracket(s, 1e-6);
  const double secs = seconds_since(start);
  const bool ok = b.lo <= phi && phi <= b.hi && b.hi - b.lo <= 1e-6 && secs <= 1.0;
  return {ok, format("[%.12f, %.12f] width %.2e, %.4f s (limits 1e-6, 1 s)", b.lo, b.hi, b.hi - b.lo, secs)};
}

WeightSequence convergent_weights(std::mt19937_64& g) {
  std::uniform_real_distribution<double> uc(0.5, 2.0), ua(-0.4, 1.0), up(0.0, 3.0);
  switch (g() % 3) {
    case 0: return WeightSequence::rational({ua(g), uc(g)}, {0.0, 1.0});
    case 1: return WeightSequence::prefix_with_limit({up(g), up(g), up(g)}, uc(g));
    default: return WeightSequence::eventually_constant({up(g), up(g)}, uc(g));
  }
}

Outcome gamma_oracles() {
  std::mt19937_64 g(404);
  double worst_gamma = 0, worst_ess = 0;
  for (int rep = 0; rep < 30; ++rep) {
    const auto w = convergent_weights(g);
    const auto b = hausdorff_mnc(OperatorFamily::diagonal(w));
    worst_gamma = std::max({worst_gamma, std::abs(b.lo - w.limsup()), std::abs(b.hi - w.limsup())});
  }
  const std::int64_t offsets[] = {-2, -1, 1, 2, 3};
  for (int rep = 0; rep < 30; ++rep) {
    const auto a = OperatorFamily::shift(convergent_weights(g), offsets[rep % 5]);
    const auto want = oracle_ess_radius(a);
    if (!want) return {false, "oracle missing for a single-band family"};
    const auto b = essential_spectral_radius(a);
    worst_ess = std::max({worst_ess, std::abs(b.lo - *want), std::abs(b.hi - *want)});
  }
  return {worst_gamma <= 1e-6 && worst_ess <= 1e-6,
          format("30 diagonal: max |gamma - limsup w| = %.2e; 30 single-band: max |rho_ess - oracle| = %.2e (limit 1e-6)",
                 worst_gamma, worst_ess)};
}

Outcome star_cross_check() {
  std::mt19937_64 g(505);
  int agree = 0;
  for (int rep = 0; rep < 30; ++rep) {
    OperatorFamily a = testing_support::random_family(g, rep % 3);
    if (rep % 5 == 4) a = matrix_sum(a, testing_support::random_family(g, 1));
    agree += overlap(hausdorff_mnc(a), gamma_via_star(a), 1e-6);
  }
  return {agree == 30, format("%d of 30 mixed families with overlapping brackets", agree)};
}

Outcome compact_perturbation() {
  std::mt19937_64 g(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int agree = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = testing_support::random_family(g, rep % 2);
    const std::size_t k = 2 + rep % 4;
    std::vector<double> e(k * k);
    for (auto& x : e) x = 2 * u(g);
    const auto b = matrix_sum(a, OperatorFamily::finite_rank(FiniteMatrix(k, k, e)));
    agree += overlap(essential_spectral_radius(a), essential_spectral_radius(b), 1e-6);
  }
  return {agree == 20, format("%d of 20 pairs with overlapping rho_ess brackets", agree)};
}

Outcome perron_fixture() {
  const auto cases = io::load_file(std::string(ESSRAD_FIXTURES) + "/perron_cases.json");
  int good = 0, total = 0;
  double worst = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto a = io::matrix_from_json(cases[i], "/" + std::to_string(i));
    const double root = oracle::perron_root(testing_support::to_mat(a));
    const auto b = spectral_radius(a);
    const double tol = 1e-10 * std::max(1.0, root);
    const double dev = std::max(std::abs(b.lo - root), std::abs(b.hi - root));
    worst = std::max(worst, dev / std::max(1.0, root));
    ++total;
    good += b.lo <= root + tol && b.hi >= root - tol && dev <= tol;
  }
  return {good == total && total == 50,
          format("%d of %d cases contain the characteristic-polynomial root, max deviation %.2e (limit 1e-10)", good,
                 total, worst)};
}

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

Outcome identities() {
  std::mt19937_64 g(707);
  int power_ok = 0, power_total = 0, cyclic_ok = 0, cyclic_total = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const MatrixSet s({testing_support::random_matrix(g, 3, 0.3), testing_support::random_matrix(g, 3, 0.3)});
    const MatrixSet q({testing_support::random_matrix(g, 3, 0.3), testing_support::random_matrix(g, 3, 0.3)});
    for (int k = 1; k <= 3; ++k) {
      const int m = 4;
      const auto pk = gen_radius_levels(set_power(s, k), m);
      const auto base = gen_radius_levels(s, k * m);
      bool ok = pk.size() == static_cast<std::size_t>(m) && base.size() == static_cast<std::size_t>(k * m);
      for (int l = 1; ok && l <= m; ++l)
        ok = close_rel(pk[l - 1].lo, base[k * l - 1].lo, 1e-9) && close_rel(pk[l - 1].hi, base[k * l - 1].hi, 1e-9);
      power_ok += ok;
      ++power_total;
    }
    for (int m = 1; m <= 4; ++m) {
      const auto pq = gen_radius_levels(set_product(s, q), m);
      const auto qp = gen_radius_levels(set_product(q, s), m);
      bool ok = pq.size() == qp.size();
      for (std::size_t l = 0; ok && l < pq.size(); ++l) ok = overlap(pq[l], qp[l], 1e-12 * std::max(1.0, pq[l].hi));
      cyclic_ok += ok;
      ++cyclic_total;
    }
  }
  return {power_ok == power_total && cyclic_ok == cyclic_total,
          format("power identity %d/%d (k <= 3, m <= 4), cyclic invariance %d/%d (m <= 4)", power_ok, power_total,
                 cyclic_ok, cyclic_total)};
}

Outcome determinism() {
  auto once = [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err, [](const std::string&) { return std::optional<std::string>(); });
    return std::to_string(code) + "\n" + out.str();
  };
  const std::vector<std::string> finite{"sweep", "--registry", "finite", "--trials", "10", "--seed", "9"};
  const std::vector<std::string> essential{"sweep", "--registry", "essential", "--trials", "5", "--seed", "9",
                                           "--format", "csv", "--max-inconclusive", "1"};
  const auto f1 = once(finite), f2 = once(finite), e1 = once(essential), e2 = once(essential);
  return {f1 == f2 && e1 == e2,
          format("finite json %zu bytes %s, essential csv %zu bytes %s", f1.size(), f1 == f2 ? "identical" : "differ",
                 e1.size(), e1 == e2 ? "identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"finite soundness sweep", finite_sweep},
      {"essential soundness sweep", essential_sweep},
      {"golden-ratio joint radius", golden_jsr},
      {"gamma and rho_ess oracles", gamma_oracles},
      {"gamma against the T*T route", star_cross_check},
      {"compact-perturbation invariance", compact_perturbation},
      {"Perron root fixture", perron_fixture},
      {"power and cyclic identities", identities},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.ok;
    std::printf("%s  criterion %zu  %-32s %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
