#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "essrad/ensemble.hpp"
#include "essrad/registry.hpp"
#include "essrad/sweep.hpp"

using namespace essrad;

namespace {

const ChainSpec& chain(const std::string& id) {
  const auto* s = find_chain(id);
  REQUIRE(s != nullptr);
  return *s;
}

ChainInput families(int count, const OperatorFamily& f) {
  ChainInput in;
  for (int k = 0; k < count; ++k) in.operands.emplace_back(singleton(f));
  return in;
}

/// Distinct weighted shifts so the permutations actually matter.
ChainInput distinct_shifts(int m) {
  ChainInput in;
  for (int k = 0; k < m; ++k)
    in.operands.emplace_back(singleton(OperatorFamily::shift(WeightSequence::rational({0.3 * k - 0.2, 0.6 + 0.25 * k}, {0.0, 1.0}))));
  return in;
}

std::vector<std::vector<int>> all_perms(int m) {
  std::vector<int> p(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i + 1;
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<std::vector<int>> sampled_perms(int m, std::uint64_t seed) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t t = 0; t < 8; ++t) {
    TrialRng rng(seed, "perm", t);
    std::vector<int> p(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    for (int i = m - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(rng.integer(0, i))]);
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_SUITE("registry") {
  TEST_CASE("catalog contents") {
    const auto& all = registry();
    CHECK(all.size() >= 37);
    CHECK(chains_of(Level::finite).size() == 16);
    CHECK(chains_of(Level::essential).size() == 21);
    std::set<std::string> ids;
    for (const auto& s : all) {
      CHECK(ids.insert(s.id).second);
      CHECK_FALSE(s.title.empty());
      CHECK_FALSE(s.anchors.empty());
      CHECK(static_cast<bool>(s.build));
    }
    CHECK(ids.count("F2") == 1);
    CHECK(find_chain("nope") == nullptr);
    const auto cat = io::catalog_json();
    CHECK(cat.size() == all.size());
  }

  TEST_CASE("F2 on the all-ones pair") {
    ChainInput in;
    in.operands.emplace_back(singleton(FiniteMatrix::ones(2, 2)));
    in.operands.emplace_back(singleton(FiniteMatrix::ones(2, 2)));
    const auto rep = evaluate_chain(chain("F2"), in);
    CHECK(rep.verdict == Verdict::pass);
    REQUIRE(rep.groups.size() == 1);
    const auto& t = rep.groups[0].terms;
    REQUIRE(t.size() == 3);
    const double want[] = {2, 2, 4};
    for (int i = 0; i < 3; ++i) {
      CHECK(t[i].value.lo <= want[i] * (1 + 1e-10));
      CHECK(t[i].value.hi >= want[i] * (1 - 1e-10));
    }
  }

  TEST_CASE("E10 on equal constant shifts") {
    for (double c : {0.7, 1.0, 1.6}) {
      auto in = families(2, OperatorFamily::shift(WeightSequence::constant(c)));
      for (double beta : {0.0, 0.5, 1.0}) {
        in.params.beta = beta;
        const auto rep = evaluate_chain(chain("E10"), in);
        CHECK(rep.verdict == Verdict::pass);
        for (const auto& g : rep.groups)
          for (const auto& t : g.terms) {
            CHECK(t.value.lo <= c * c + 1e-6);
            CHECK(t.value.hi >= c * c - 1e-6);
          }
      }
    }
  }

  TEST_CASE("F4 with one factor is an equality") {
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
      auto in = sample_input(chain("F4"), default_ensemble(Level::finite, 3), trial);
      in.params.m = 1;
      in.operands.erase(in.operands.begin() + 1, in.operands.end());
      const auto rep = evaluate_chain(chain("F4"), in);
      CHECK(rep.verdict == Verdict::pass);
      const auto& t = rep.groups.at(0).terms;
      CHECK(std::abs(t[0].value.lo - t[1].value.lo) <= 1e-9 * std::max(1.0, t[1].value.hi));
      CHECK(std::abs(t[0].value.hi - t[1].value.hi) <= 1e-9 * std::max(1.0, t[1].value.hi));
    }
  }

  TEST_CASE("side conditions are refused, not failed") {
    auto e19 = distinct_shifts(3);
    e19.params.m = 3;
    e19.params.alpha = 1;
    e19.params.tau = {1, 2, 3};
    e19.params.nu = {1, 2, 3};
    CHECK_THROWS_AS(evaluate_chain(chain("E19"), e19), HypothesisViolation);

    ChainInput f10;
    f10.operands.emplace_back(singleton(FiniteMatrix::ones(3, 3)));
    f10.params.t = 0.5;
    CHECK_THROWS_AS(evaluate_chain(chain("F10"), f10), HypothesisViolation);
    f10.params.t = 1.0;
    CHECK(evaluate_chain(chain("F10"), f10).verdict == Verdict::pass);

    auto e1 = distinct_shifts(2);
    e1.params.m = 2;
    e1.params.t = 0.9;
    CHECK_THROWS_AS(evaluate_chain(chain("E1"), e1), HypothesisViolation);

    auto bad_perm = distinct_shifts(4);
    bad_perm.params.m = 4;
    bad_perm.params.alpha = 1;
    bad_perm.params.tau = {1, 2, 2, 4};
    bad_perm.params.nu = {1, 2, 3, 4};
    CHECK_THROWS_AS(evaluate_chain(chain("E19"), bad_perm), HypothesisViolation);
  }

  TEST_CASE("permutation coverage for the adjoint-pair chains") {
    for (int m : {2, 4, 6}) {
      auto in = distinct_shifts(m);
      in.params.m = m;
      in.params.alpha = 2.0 / m;
      const auto perms = m <= 4 ? all_perms(m) : sampled_perms(m, 19);
      for (const auto& tau : perms) {
        in.params.tau = tau;
        CHECK(evaluate_chain(chain("E20"), in).verdict != Verdict::fail);
        const auto nus = m <= 4 ? perms : sampled_perms(m, 91);
        for (const auto& nu : nus) {
          if (m == 6 && nu != nus[&tau - &perms[0]]) continue;
          in.params.nu = nu;
          in.params.alpha = 1.0 / m;
          CHECK(evaluate_chain(chain("E19"), in).verdict != Verdict::fail);
          in.params.alpha = 2.0 / m;
        }
      }
    }
    for (int m = 1; m <= 6; ++m) {
      auto in = distinct_shifts(m);
      in.params.m = m;
      in.params.alpha = 1.0 / m;
      const auto perms = m <= 4 ? all_perms(m) : sampled_perms(m, 21);
      const auto nus = m <= 4 ? perms : sampled_perms(m, 12);
      for (std::size_t i = 0; i < perms.size(); ++i)
        for (std::size_t j = 0; j < nus.size(); ++j) {
          if (m > 4 && i != j) continue;
          in.params.tau = perms[i];
          in.params.nu = nus[j];
          CHECK(evaluate_chain(chain("E21"), in).verdict != Verdict::fail);
        }
    }
  }

  TEST_CASE("F1 over 100 seeded pairs") {
    auto ens = default_ensemble(Level::finite, 7);
    ens.min_size = ens.max_size = 4;
    const auto res = run_sweep(chain("F1"), ens, 100);
    CHECK(res.summary.pass == 100);
    CHECK(res.summary.fail == 0);
  }

  TEST_CASE("E1 over 20 shift families with t = 2") {
    const auto& e1 = chain("E1");
    EnsembleSpec ens;
    ens.kind = EnsembleKind::shift_family;
    ens.seed = 5;
    int pass = 0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      auto in = sample_input(e1, ens, trial);
      in.params.t = 2.0;
      const auto rep = evaluate_chain(e1, in);
      CHECK(rep.verdict != Verdict::fail);
      pass += rep.verdict == Verdict::pass;
    }
    CHECK(pass == 20);
  }

  TEST_CASE("repeated evaluation gives identical reports") {
    for (const auto& s : registry()) {
      const auto ens = default_ensemble(s.level, 99);
      const auto in = sample_input(s, ens, 3);
      const auto a = io::dump(io::to_json(evaluate_chain(s, in)));
      const auto b = io::dump(io::to_json(evaluate_chain(s, sample_input(s, ens, 3))));
      CHECK_MESSAGE(a == b, s.id);
    }
  }

  TEST_CASE("sweeps do not depend on the thread count") {
    const auto ens = default_ensemble(Level::finite, 1);
    const auto one = run_sweep(chain("F8"), ens, 12, {}, true, 1);
    const auto four = run_sweep(chain("F8"), ens, 12, {}, true, 4);
    REQUIRE(one.records.size() == four.records.size());
    for (std::size_t i = 0; i < one.records.size(); ++i)
      CHECK(io::dump(io::to_json(one.records[i].report)) == io::dump(io::to_json(four.records[i].report)));
    CHECK(io::dump(io::to_json(one.summary)) == io::dump(io::to_json(four.summary)));
  }
}
