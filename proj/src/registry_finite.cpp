#include "registry_common.hpp"

namespace essrad::reg {

namespace {

using MS = MatrixSet;

ChainSpec base(std::string id, std::string title, std::vector<std::string> anchors, std::string hyp, Arity arity) {
  ChainSpec s;
  s.id = std::move(id);
  s.level = Level::finite;
  s.title = std::move(title);
  s.anchors = std::move(anchors);
  s.hypothesis_text = std::move(hyp);
  s.arity = std::move(arity);
  return s;
}

Arity pair_arity() { return Arity{.operands = "2 matrices", .count = fixed_count(2), .set_size = 1, .set_max_m = 3, .params = {}}; }

const MS& op(const ChainInput& in, int k) { return operand<FiniteMatrix>(in, k); }

std::vector<MS> ops(const ChainInput& in, int first, int count) {
  std::vector<MS> v;
  for (int k = 0; k < count; ++k) v.push_back(op(in, first + k));
  return v;
}

void check_alphas(const std::string& id, const ChainParams& p, int m, bool allow_ge) {
  require(static_cast<int>(p.alphas.size()) == m, id, "alphas must have m entries");
  double s = 0;
  for (double a : p.alphas) {
    require(a > 0 && std::isfinite(a), id, "alphas must be positive");
    s += a;
  }
  if (allow_ge) require(s >= 1 - 1e-12, id, "alphas must sum to at least 1");
  else require(std::abs(s - 1) <= 1e-12, id, "alphas must sum to 1");
}

// Two-matrix chains with A o B on the left and AB on the right.

ChainSpec f1() {
  auto s = base("F1", "Hadamard product radius below the ordinary product radius", {"rho(A o B) <= rho(AB)"},
                "A, B nonnegative square matrices of one size", pair_arity());
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const MS a = op(in, 0), b = op(in, 1);
    return std::vector<GroupDef>{group("main", {term("rho(A o B)", [=] { return ev.r(set_hadamard_product(a, b)); }),
                                                term("rho(AB)", [=] { return ev.r(set_product(a, b)); })})};
  };
  return s;
}

ChainSpec f2() {
  auto s = base("F2", "Hadamard product radius through the Hadamard squares",
                {"rho(A o B) <= rho((A o A)(B o B))^(1/2) <= rho(AB)"}, "A, B nonnegative square matrices of one size",
                pair_arity());
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const MS a = op(in, 0), b = op(in, 1);
    return std::vector<GroupDef>{group(
        "main", {term("rho(A o B)", [=] { return ev.r(set_hadamard_product(a, b)); }),
                 term("rho((A o A)(B o B))^(1/2)",
                      [=] { return powb(ev.r(set_product(set_hadamard_product(a, a), set_hadamard_product(b, b))), 0.5); }),
                 term("rho(AB)", [=] { return ev.r(set_product(a, b)); })})};
  };
  return s;
}

ChainSpec f3() {
  auto s = base("F3", "Hadamard product radius through AB o BA", {"rho(A o B) <= rho(AB o BA)^(1/2) <= rho(AB)"},
                "A, B nonnegative square matrices of one size", pair_arity());
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const MS a = op(in, 0), b = op(in, 1);
    return std::vector<GroupDef>{group(
        "main", {term("rho(A o B)", [=] { return ev.r(set_hadamard_product(a, b)); }),
                 term("rho(AB o BA)^(1/2)",
                      [=] { return powb(ev.r(set_hadamard_product(set_product(a, b), set_product(b, a))), 0.5); }),
                 term("rho(AB)", [=] { return ev.r(set_product(a, b)); })})};
  };
  return s;
}

ChainSpec f4() {
  auto s = base("F4", "m-fold Hadamard product radius below the product radius",
                {"rho(A_1 o ... o A_m) <= rho(A_1 ... A_m)"}, "m >= 1 nonnegative square matrices of one size",
                Arity{.operands = "m matrices", .count = m_count(), .set_size = 1, .set_max_m = 3, .params = {"m"}});
  s.hypothesis = [](const ChainInput& in) { require(in.params.m >= 1, "F4", "m must be at least 1"); };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const auto v = ops(in, 0, in.params.m);
    return std::vector<GroupDef>{group("main", {term("rho(o_j P_j)", [=] { return ev.r(mix_same(v, 1.0)); }),
                                                term("rho(P_1 ... P_m)", [=] { return ev.r(product(v)); })})};
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.m = pick(u, 1, 4);
    return p;
  };
  return s;
}

ChainSpec f5() {
  auto s = base("F5", "Four-term refinement through AB o AB",
                {"rho(A o B) <= rho((A o A)(B o B))^(1/2) <= rho(AB o AB)^(1/2) <= rho(AB)"},
                "A, B nonnegative square matrices of one size", pair_arity());
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const MS a = op(in, 0), b = op(in, 1);
    return std::vector<GroupDef>{group(
        "main",
        {term("rho(A o B)", [=] { return ev.r(set_hadamard_product(a, b)); }),
         term("rho((A o A)(B o B))^(1/2)",
              [=] { return powb(ev.r(set_product(set_hadamard_product(a, a), set_hadamard_product(b, b))), 0.5); }),
         term("rho(AB o AB)^(1/2)", [=] {
           const auto ab = set_product(a, b);
           return powb(ev.r(set_hadamard_product(ab, ab)), 0.5);
         }),
         term("rho(AB)", [=] { return ev.r(set_product(a, b)); })})};
  };
  return s;
}

ChainSpec f6() {
  auto s = base("F6", "Beta-interpolated refinement",
                {"rho(A o B) <= rho((A o A)(B o B))^(1/2) <= rho(AB o AB)^(beta/2) rho(BA o BA)^((1-beta)/2) <= rho(AB)"},
                "A, B nonnegative square matrices of one size; beta in [0,1]",
                Arity{.operands = "2 matrices", .count = fixed_count(2), .set_size = 1, .set_max_m = 3, .params = {"beta"}});
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.beta >= 0 && in.params.beta <= 1, "F6", "beta must lie in [0,1]");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const MS a = op(in, 0), b = op(in, 1);
    const double beta = in.params.beta;
    return std::vector<GroupDef>{group(
        "main",
        {term("rho(A o B)", [=] { return ev.r(set_hadamard_product(a, b)); }),
         term("rho((A o A)(B o B))^(1/2)",
              [=] { return powb(ev.r(set_product(set_hadamard_product(a, a), set_hadamard_product(b, b))), 0.5); }),
         term("rho(AB o AB)^(" + fmt(beta / 2) + ") rho(BA o BA)^(" + fmt((1 - beta) / 2) + ")",
              [=] {
                const auto ab = set_product(a, b), ba = set_product(b, a);
                return prodb({powb(ev.r(set_hadamard_product(ab, ab)), beta / 2),
                              powb(ev.r(set_hadamard_product(ba, ba)), (1 - beta) / 2)});
              }),
         term("rho(AB)", [=] { return ev.r(set_product(a, b)); })})};
  };
  s.draw = [](std::uint64_t trial, const Uniform&) {
    ChainParams p;
    p.beta = beta_grid()[trial % beta_grid().size()];
    return p;
  };
  return s;
}

ChainSpec f7() {
  auto s = base("F7", "Refinement through AB o BA and the Hadamard squares of AB, BA",
                {"rho(A o B) <= rho(AB o BA)^(1/2) <= rho(AB o AB)^(1/4) rho(BA o BA)^(1/4) <= rho(AB)"},
                "A, B nonnegative square matrices of one size", pair_arity());
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const MS a = op(in, 0), b = op(in, 1);
    return std::vector<GroupDef>{group(
        "main",
        {term("rho(A o B)", [=] { return ev.r(set_hadamard_product(a, b)); }),
         term("rho(AB o BA)^(1/2)",
              [=] { return powb(ev.r(set_hadamard_product(set_product(a, b), set_product(b, a))), 0.5); }),
         term("rho(AB o AB)^(1/4) rho(BA o BA)^(1/4)",
              [=] {
                const auto ab = set_product(a, b), ba = set_product(b, a);
                return prodb({powb(ev.r(set_hadamard_product(ab, ab)), 0.25), powb(ev.r(set_hadamard_product(ba, ba)), 0.25)});
              }),
         term("rho(AB)", [=] { return ev.r(set_product(a, b)); })})};
  };
  return s;
}

// Products of Hadamard weighted means, k rows by m columns of matrices.

ChainSpec f8() {
  auto s = base("F8", "Products of Hadamard weighted geometric means",
                {"prod_i (o_j A_ij^(a_j)) <= o_j (A_1j ... A_kj)^(a_j) entrywise",
                 "||prod_i (o_j A_ij^(a_j))|| <= ||o_j (A_1j ... A_kj)^(a_j)|| <= prod_j ||A_1j ... A_kj||^a_j",
                 "rho(prod_i (o_j A_ij^(a_j))) <= rho(o_j (A_1j ... A_kj)^(a_j)) <= prod_j rho(A_1j ... A_kj)^a_j"},
                "k*m nonnegative square matrices A_ij (row-major); positive alphas with sum >= 1",
                Arity{.operands = "k*m matrices", .count = km_count(), .set_size = 1, .set_max_m = 3,
                      .params = {"k", "m", "alphas", "space"}});
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.k >= 1 && in.params.m >= 1, "F8", "k and m must be at least 1");
    check_alphas("F8", in.params, in.params.m, true);
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const int k = in.params.k, m = in.params.m;
    const auto al = in.params.alphas;
    const auto sp = in.params.space;
    std::vector<MS> rows, cols;
    for (int i = 0; i < k; ++i) rows.push_back(mix(ops(in, i * m, m), al));
    for (int j = 0; j < m; ++j) {
      std::vector<MS> c;
      for (int i = 0; i < k; ++i) c.push_back(op(in, i * m + j));
      cols.push_back(product(c));
    }
    const MS a = product(rows);
    const MS c = mix(cols, al);
    const std::string a_lab = "prod_i(o_j A_ij^(a_j))", c_lab = "o_j(A_1j...A_kj)^(a_j)";
    const std::string n = std::string("||.||_") + to_string(sp);
    return std::vector<GroupDef>{
        group("entrywise", {term("max ratio " + a_lab + " / " + c_lab, [=] { return entry_ratio(a[0], c[0]); }),
                            term("1", [] { return exact(1.0, "constant"); })}),
        group("norm", {term(n + "(" + a_lab + ")", [=] { return ev.norm(a, sp); }),
                       term(n + "(" + c_lab + ")", [=] { return ev.norm(c, sp); }),
                       term("prod_j " + n + "(A_1j...A_kj)^a_j",
                            [=] {
                              std::vector<Bracket> f;
                              for (int j = 0; j < m; ++j) f.push_back(powb(ev.norm(cols[j], sp), al[j]));
                              return prodb(f);
                            })}),
        group("spectral", {term("rho(" + a_lab + ")", [=] { return ev.r(a); }),
                           term("rho(" + c_lab + ")", [=] { return ev.r(c); }),
                           term("prod_j rho(A_1j...A_kj)^a_j", [=] {
                             std::vector<Bracket> f;
                             for (int j = 0; j < m; ++j) f.push_back(powb(ev.r(cols[j]), al[j]));
                             return prodb(f);
                           })})};
  };
  s.draw = [](std::uint64_t trial, const Uniform& u) {
    ChainParams p;
    p.k = pick(u, 1, 3);
    p.m = pick(u, 1, 3);
    p.alphas = random_weights(u, p.m, trial % 2 == 0 ? 1.0 : 1.0 + 0.5 * u());
    p.space = space_for_trial(trial);
    return p;
  };
  return s;
}

ChainSpec f9() {
  auto s = base("F9", "Weighted means of single matrices and Hadamard powers of products",
                {"||o_j A_j^(a_j)|| <= prod_j ||A_j||^a_j", "rho(o_j A_j^(a_j)) <= prod_j rho(A_j)^a_j",
                 "A_1^(t) ... A_m^(t) <= (A_1 ... A_m)^(t) entrywise", "rho(A_1^(t) ... A_m^(t)) <= rho(A_1 ... A_m)^t",
                 "||A_1^(t) ... A_m^(t)|| <= ||A_1 ... A_m||^t"},
                "m nonnegative square matrices; positive alphas with sum >= 1; t >= 1",
                Arity{.operands = "m matrices", .count = m_count(), .set_size = 1, .set_max_m = 3,
                      .params = {"m", "alphas", "t", "space"}});
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.m >= 1, "F9", "m must be at least 1");
    check_alphas("F9", in.params, in.params.m, true);
    require(in.params.t >= 1, "F9", "t must be at least 1");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const int m = in.params.m;
    const auto al = in.params.alphas;
    const double t = in.params.t;
    const auto sp = in.params.space;
    const auto v = ops(in, 0, m);
    const MS mean = mix(v, al);
    std::vector<MS> powers;
    for (const auto& x : v) powers.push_back(hpow(x, t));
    const MS lhs = product(powers), prod = product(v);
    const std::string n = std::string("||.||_") + to_string(sp);
    const std::string ts = fmt(t);
    return std::vector<GroupDef>{
        group("weighted_mean_norm",
              {term(n + "(o_j P_j^(a_j))", [=] { return ev.norm(mean, sp); }),
               term("prod_j " + n + "(P_j)^a_j",
                    [=] {
                      std::vector<Bracket> f;
                      for (int j = 0; j < m; ++j) f.push_back(powb(ev.norm(v[j], sp), al[j]));
                      return prodb(f);
                    })}),
        group("weighted_mean_radius", {term("rho(o_j P_j^(a_j))", [=] { return ev.r(mean); }),
                                       term("prod_j rho(P_j)^a_j",
                                            [=] {
                                              std::vector<Bracket> f;
                                              for (int j = 0; j < m; ++j) f.push_back(powb(ev.r(v[j]), al[j]));
                                              return prodb(f);
                                            })}),
        group("power_entrywise",
              {term("max ratio P_1^(" + ts + ")...P_m^(" + ts + ") / (P_1...P_m)^(" + ts + ")",
                    [=] { return entry_ratio(lhs[0], hpow(prod, t)[0]); }),
               term("1", [] { return exact(1.0, "constant"); })}),
        group("power_radius", {term("rho(P_1^(" + ts + ")...P_m^(" + ts + "))", [=] { return ev.r(lhs); }),
                               term("rho(P_1...P_m)^" + ts, [=] { return powb(ev.r(prod), t); })}),
        group("power_norm", {term(n + "(P_1^(" + ts + ")...P_m^(" + ts + "))", [=] { return ev.norm(lhs, sp); }),
                             term(n + "(P_1...P_m)^" + ts, [=] { return powb(ev.norm(prod, sp), t); })})};
  };
  s.draw = [](std::uint64_t trial, const Uniform& u) {
    ChainParams p;
    p.m = pick(u, 1, 3);
    p.alphas = random_weights(u, p.m, trial % 2 == 0 ? 1.0 : 1.0 + 0.5 * u());
    p.t = pick_of(u, std::vector<double>{1.0, 1.5, 2.0, 3.0});
    p.space = space_for_trial(trial);
    return p;
  };
  return s;
}

ChainSpec f10() {
  auto s = base("F10", "Hadamard powers scaled by the largest entry",
                {"A^(t) <= s^(t-1) A entrywise", "||A^(t)|| <= s^(t-1) ||A||", "rho(A^(t)) <= s^(t-1) rho(A)",
                 "s = largest entry of A"},
                "A nonnegative square matrix; t >= 1",
                Arity{.operands = "1 matrix", .count = fixed_count(1), .set_size = 1, .set_max_m = 3, .params = {"t", "space"}});
  s.hypothesis = [](const ChainInput& in) { require(in.params.t >= 1, "F10", "t must be at least 1"); };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const MS a = op(in, 0);
    const double t = in.params.t;
    const auto sp = in.params.space;
    const double c = std::pow(entrywise_sup(a[0]), t - 1);
    const MS at = hpow(a, t);
    const std::string ts = fmt(t), n = std::string("||.||_") + to_string(sp);
    return std::vector<GroupDef>{
        group("entrywise", {term("max ratio A^(" + ts + ") / (s^(t-1) A)",
                                 [=] { return entry_ratio(at[0], scale(a[0], c)); }),
                            term("1", [] { return exact(1.0, "constant"); })}),
        group("norm", {term(n + "(A^(" + ts + "))", [=] { return ev.norm(at, sp); }),
                       term("s^(t-1) " + n + "(A)", [=] { return scaled(ev.norm(a, sp), c); })}),
        group("spectral", {term("rho(A^(" + ts + "))", [=] { return ev.r(at); }),
                           term("s^(t-1) rho(A)", [=] { return scaled(ev.r(a), c); })})};
  };
  s.draw = [](std::uint64_t trial, const Uniform& u) {
    ChainParams p;
    p.t = pick_of(u, std::vector<double>{1.0, 1.5, 2.0, 3.0});
    p.space = space_for_trial(trial);
    return p;
  };
  return s;
}

ChainSpec f11() {
  auto s = base("F11", "Set radii of Hadamard weighted means",
                {"r(o_j S_j^(a_j)) <= r(o_j (S_j^n)^(a_j))^(1/n) <= prod_j r(S_j)^a_j",
                 "r(o_j S_j^(1/m)) <= r(S_1 ... S_m)^(1/m)", "r(S^(t)) <= r((S^n)^(t))^(1/n) <= r(S)^t",
                 "r is the generalized or joint spectral radius"},
                "m bounded sets of nonnegative matrices; positive alphas with sum >= 1; n >= 1; t >= 1",
                Arity{.operands = "m matrix sets", .count = m_count(), .set_size = 2, .set_max_m = 2,
                      .params = {"m", "n", "alphas", "t"}});
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.m >= 1, "F11", "m must be at least 1");
    require(in.params.n >= 1, "F11", "n must be at least 1");
    check_alphas("F11", in.params, in.params.m, true);
    require(in.params.t >= 1, "F11", "t must be at least 1");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const int m = in.params.m, n = in.params.n;
    const auto al = in.params.alphas;
    const double t = in.params.t;
    const auto v = ops(in, 0, m);
    const std::string ns = std::to_string(n), ts = fmt(t);
    return std::vector<GroupDef>{
        group("weighted_mean",
              {term("r(o_j S_j^(a_j))", [=] { return ev.r(mix(v, al)); }),
               term("r(o_j (S_j^" + ns + ")^(a_j))^(1/" + ns + ")",
                    [=] {
                      std::vector<MS> p;
                      for (const auto& x : v) p.push_back(spow(x, n));
                      return powb(ev.r(mix(p, al)), 1.0 / n);
                    }),
               term("prod_j r(S_j)^a_j",
                    [=] {
                      std::vector<Bracket> f;
                      for (int j = 0; j < m; ++j) f.push_back(powb(ev.r(v[j]), al[j]));
                      return prodb(f);
                    })}),
        group("geometric_mean", {term("r(o_j S_j^(1/m))", [=] { return ev.r(mix_same(v, 1.0 / m)); }),
                                 term("r(S_1...S_m)^(1/m)", [=] { return powb(ev.r(product(v)), 1.0 / m); })}),
        group("power", {term("r(S_1^(" + ts + "))", [=] { return ev.r(hpow(v[0], t)); }),
                        term("r((S_1^" + ns + ")^(" + ts + "))^(1/" + ns + ")",
                             [=] { return powb(ev.r(hpow(spow(v[0], n), t)), 1.0 / n); }),
                        term("r(S_1)^" + ts, [=] { return powb(ev.r(v[0]), t); })})};
  };
  s.draw = [](std::uint64_t trial, const Uniform& u) {
    ChainParams p;
    p.m = pick(u, 1, 3);
    p.n = pick(u, 1, 2);
    p.alphas = random_weights(u, p.m, trial % 2 == 0 ? 1.0 : 1.0 + 0.5 * u());
    p.t = pick_of(u, std::vector<double>{1.0, 1.5, 2.0});
    return p;
  };
  return s;
}

ChainSpec f12() {
  auto s = base("F12", "Sums of Hadamard weighted means",
                {"sum_i prod_j f_ij^a_j <= prod_j (sum_i f_ij)^a_j pointwise",
                 "rho(sum_i o_j A_ij^(a_j)) <= rho(o_j (sum_i A_ij)^(a_j)) <= prod_j rho(sum_i A_ij)^a_j"},
                "k*m nonnegative square matrices A_ij (row-major) read as functions on index pairs; positive alphas "
                "with sum >= 1",
                Arity{.operands = "k*m matrices", .count = km_count(), .set_size = 1, .set_max_m = 3,
                      .params = {"k", "m", "alphas"}});
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.k >= 1 && in.params.m >= 1, "F12", "k and m must be at least 1");
    check_alphas("F12", in.params, in.params.m, true);
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const int k = in.params.k, m = in.params.m;
    const auto al = in.params.alphas;
    std::vector<MS> rows, colsums;
    for (int i = 0; i < k; ++i) rows.push_back(mix(ops(in, i * m, m), al));
    for (int j = 0; j < m; ++j) {
      std::vector<MS> c;
      for (int i = 0; i < k; ++i) c.push_back(op(in, i * m + j));
      colsums.push_back(sum(c));
    }
    const MS lhs = sum(rows), rhs = mix(colsums, al);
    return std::vector<GroupDef>{
        group("pointwise", {term("max ratio sum_i prod_j f_ij^a_j / prod_j (sum_i f_ij)^a_j",
                                 [=] { return entry_ratio(lhs[0], rhs[0]); }),
                            term("1", [] { return exact(1.0, "constant"); })}),
        group("spectral", {term("rho(sum_i o_j A_ij^(a_j))", [=] { return ev.r(lhs); }),
                           term("rho(o_j (sum_i A_ij)^(a_j))", [=] { return ev.r(rhs); }),
                           term("prod_j rho(sum_i A_ij)^a_j", [=] {
                             std::vector<Bracket> f;
                             for (int j = 0; j < m; ++j) f.push_back(powb(ev.r(colsums[j]), al[j]));
                             return prodb(f);
                           })})};
  };
  s.draw = [](std::uint64_t trial, const Uniform& u) {
    ChainParams p;
    p.k = pick(u, 1, 3);
    p.m = pick(u, 1, 3);
    p.alphas = random_weights(u, p.m, trial % 2 == 0 ? 1.0 : 1.0 + 0.5 * u());
    return p;
  };
  return s;
}

ChainSpec f13() {
  auto s = base("F13", "Norm of a matrix set through S*S and SS*",
                {"||S|| = rho(S*S)^(1/2) = rho(SS*)^(1/2) = rho-hat(S*S)^(1/2) = rho-hat(SS*)^(1/2)",
                 "||S|| = sup of l2 operator norms over S"},
                "a bounded set S of nonnegative square matrices, l2 norms",
                Arity{.operands = "1 matrix set", .count = fixed_count(1), .set_size = 2, .set_max_m = 3, .params = {}});
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const MS x = op(in, 0);
    const MS ss = set_product(adj(x), x), ss2 = set_product(x, adj(x));
    auto gen = [=](const MS& y) {
      if (y.size() == 1) return ev.r(y);
      return set_radius(y, RadiusKind::gen_rho, cfg.jsr_delta, cfg.jsr);
    };
    auto joint = [=](const MS& y) {
      if (y.size() == 1) return ev.r(y);
      return set_radius(y, RadiusKind::joint_rho, cfg.jsr_delta, cfg.jsr);
    };
    const std::vector<Link> eq(4, Link::eq);
    return std::vector<GroupDef>{group("norm_identity",
                                       {term("||S||_l2", [=] { return ev.norm(x, SpaceTag::l2); }),
                                        term("rho(S*S)^(1/2)", [=] { return powb(gen(ss), 0.5); }),
                                        term("rho(SS*)^(1/2)", [=] { return powb(gen(ss2), 0.5); }),
                                        term("rho-hat(S*S)^(1/2)", [=] { return powb(joint(ss), 0.5); }),
                                        term("rho-hat(SS*)^(1/2)", [=] { return powb(joint(ss2), 0.5); })},
                                       eq)};
  };
  return s;
}

ChainSpec f14() {
  auto s = base("F14", "Set version with unequal Hadamard powers of AB and BA",
                {"r(S o T) <= r(ST o TS)^(1/2) <= r((ST)^(1/beta))^(beta/2) r((TS)^(1/(1-beta)))^((1-beta)/2) <= r(ST)",
                 "r is the generalized or joint spectral radius"},
                "two bounded sets S, T of nonnegative matrices; beta in (0,1)",
                Arity{.operands = "2 matrix sets", .count = fixed_count(2), .set_size = 2, .set_max_m = 3,
                      .params = {"beta"}});
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.beta > 0 && in.params.beta < 1, "F14", "beta must lie in (0,1)");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const MS a = op(in, 0), b = op(in, 1);
    const double beta = in.params.beta;
    return std::vector<GroupDef>{group(
        "main",
        {term("r(S o T)", [=] { return ev.r(set_hadamard_product(a, b)); }),
         term("r(ST o TS)^(1/2)", [=] { return powb(ev.r(set_hadamard_product(set_product(a, b), set_product(b, a))), 0.5); }),
         term("r((ST)^(" + fmt(1 / beta) + "))^(" + fmt(beta / 2) + ") r((TS)^(" + fmt(1 / (1 - beta)) + "))^(" +
                  fmt((1 - beta) / 2) + ")",
              [=] {
                return prodb({powb(ev.r(hpow(set_product(a, b), 1 / beta)), beta / 2),
                              powb(ev.r(hpow(set_product(b, a), 1 / (1 - beta))), (1 - beta) / 2)});
              }),
         term("r(ST)", [=] { return ev.r(set_product(a, b)); })})};
  };
  s.draw = [](std::uint64_t trial, const Uniform&) {
    ChainParams p;
    const double grid[] = {0.25, 0.5, 0.75};
    p.beta = grid[trial % 3];
    return p;
  };
  return s;
}

ChainSpec f15() {
  auto s = base("F15", "Hadamard geometric means against cyclic products",
                {"rho(A^(1/2) o B^(1/2)) <= rho(AB)^(1/2)",
                 "rho(o_j A_j^(1/m)) <= rho(o_j C_j^(1/m))^(1/m) <= rho(A_1 ... A_m)^(1/m)",
                 "C_j = A_j ... A_m A_1 ... A_{j-1}"},
                "m >= 2 nonnegative square matrices of one size",
                Arity{.operands = "m matrices", .count = m_count(), .set_size = 1, .set_max_m = 3, .params = {"m"}});
  s.hypothesis = [](const ChainInput& in) { require(in.params.m >= 2, "F15", "m must be at least 2"); };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const int m = in.params.m;
    const auto v = ops(in, 0, m);
    std::vector<MS> cyc;
    for (int j = 0; j < m; ++j) {
      std::vector<MS> w;
      for (int q = 0; q < m; ++q) w.push_back(v[(j + q) % m]);
      cyc.push_back(product(w));
    }
    return std::vector<GroupDef>{
        group("pair", {term("rho(P1^(1/2) o P2^(1/2))", [=] { return ev.r(mix_same(std::vector<MS>{v[0], v[1]}, 0.5)); }),
                       term("rho(P1 P2)^(1/2)", [=] { return powb(ev.r(set_product(v[0], v[1])), 0.5); })}),
        group("cyclic", {term("rho(o_j P_j^(1/m))", [=] { return ev.r(mix_same(v, 1.0 / m)); }),
                         term("rho(o_j C_j^(1/m))^(1/m)", [=] { return powb(ev.r(mix_same(cyc, 1.0 / m)), 1.0 / m); }),
                         term("rho(P_1...P_m)^(1/m)", [=] { return powb(ev.r(product(v)), 1.0 / m); })})};
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.m = pick(u, 2, 4);
    return p;
  };
  return s;
}

ChainSpec f16() {
  auto s = base("F16", "l2 norm of a Hadamard geometric mean through A*B",
                {"||A^(1/2) o B^(1/2)|| <= rho((A*B)^(1/2) o (B*A)^(1/2))^(1/2) <= rho(A*B)^(1/2) = rho(AB*)^(1/2)",
                 "||.|| is the l2 operator norm"},
                "A, B nonnegative square matrices of one size", pair_arity());
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    FiniteEval ev{cfg};
    const MS a = op(in, 0), b = op(in, 1);
    return std::vector<GroupDef>{group(
        "main",
        {term("||A^(1/2) o B^(1/2)||_l2", [=] { return ev.norm(mix_same(std::vector<MS>{a, b}, 0.5), SpaceTag::l2); }),
         term("rho((A*B)^(1/2) o (B*A)^(1/2))^(1/2)",
              [=] {
                return powb(ev.r(mix_same(std::vector<MS>{set_product(adj(a), b), set_product(adj(b), a)}, 0.5)), 0.5);
              }),
         term("rho(A*B)^(1/2)", [=] { return powb(ev.r(set_product(adj(a), b)), 0.5); }),
         term("rho(AB*)^(1/2)", [=] { return powb(ev.r(set_product(a, adj(b))), 0.5); })},
        {Link::le, Link::le, Link::eq})};
  };
  return s;
}

}  // namespace

std::vector<ChainSpec> finite_catalog() {
  return {f1(), f2(), f3(), f4(), f5(), f6(), f7(), f8(), f9(), f10(), f11(), f12(), f13(), f14(), f15(), f16()};
}

}  // namespace essrad::reg
