#include "registry_common.hpp"

namespace essrad::reg {

namespace {

using FS = FamilySet;
using Fam = OperatorFamily;

ChainSpec base(std::string id, std::string title, std::vector<std::string> anchors, std::string hyp, Arity arity) {
  ChainSpec s;
  s.id = std::move(id);
  s.level = Level::essential;
  s.title = std::move(title);
  s.anchors = std::move(anchors);
  s.hypothesis_text = std::move(hyp);
  s.arity = std::move(arity);
  return s;
}

Arity arity(std::string what, std::function<int(const ChainParams&)> count, int set_size, int set_max_m,
            std::vector<std::string> params) {
  return Arity{.operands = std::move(what), .count = std::move(count), .set_size = set_size, .set_max_m = set_max_m,
               .params = std::move(params)};
}

const FS& op(const ChainInput& in, int k) { return operand<Fam>(in, k); }

std::vector<FS> ops(const ChainInput& in, int first, int count) {
  std::vector<FS> v;
  for (int k = 0; k < count; ++k) v.push_back(op(in, first + k));
  return v;
}

FS wset(const ChainInput& in, const Word& w) { return word_set<Fam>(in, w); }
FS first(const FS& s) { return singleton(s[0]); }

void check_alphas(const std::string& id, const ChainParams& p, int m) {
  require(static_cast<int>(p.alphas.size()) == m, id, "alphas must have m entries");
  double s = 0;
  for (double a : p.alphas) {
    require(a > 0 && std::isfinite(a), id, "alphas must be positive");
    s += a;
  }
  require(s >= 1 - 1e-12, id, "alphas must sum to at least 1");
}

void check_n(const std::string& id, const ChainParams& p) { require(p.n >= 1, id, "n must be at least 1"); }

Bracket weighted(const std::vector<Bracket>& bs, const std::vector<double>& ex) {
  std::vector<Bracket> f;
  for (std::size_t j = 0; j < bs.size(); ++j) f.push_back(powb(bs[j], ex[j]));
  return prodb(f);
}

std::vector<FS> powers(const std::vector<FS>& v, int n) {
  std::vector<FS> out;
  for (const auto& s : v) out.push_back(spow(s, n));
  return out;
}

std::vector<FS> hpowers(const std::vector<FS>& v, double t) {
  std::vector<FS> out;
  for (const auto& s : v) out.push_back(hpow(s, t));
  return out;
}

std::vector<double> ones(std::size_t m, double a) { return std::vector<double>(m, a); }

std::vector<double> weights_draw(const Uniform& u, std::uint64_t trial, int m) {
  return random_weights(u, m, trial % 2 == 0 ? 1.0 : 1.0 + 0.5 * u());
}

// ------------------------------------------------------------------ E1

ChainSpec e1() {
  auto s = base("E1", "Measure of noncompactness and essential radius under Hadamard powers",
                {"gamma(A^(t)) <= gamma(A)^t", "rho_ess(A^(t)) <= rho_ess(A)^t",
                 "gamma(A_1^(t) ... A_m^(t)) <= gamma(A_1 ... A_m)^t",
                 "rho_ess(A_1^(t) ... A_m^(t)) <= rho_ess(A_1 ... A_m)^t", "gamma(A^(t)) <= s^(t-1) gamma(A)",
                 "rho_ess(A^(t)) <= s^(t-1) rho_ess(A)", "s = supremum of the entries of A"},
                "m nonnegative infinite matrices bounded on l2; t >= 1",
                arity("m families", m_count(), 1, 3, {"m", "t"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.m >= 1, "E1", "m must be at least 1");
    require(in.params.t >= 1, "E1", "t must be at least 1");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const double t = in.params.t;
    const auto v = ops(in, 0, in.params.m);
    const FS a = v[0], at = hpow(a, t);
    const FS prod = product(v), lhs = product(hpowers(v, t));
    const double c = std::pow(entrywise_sup(a[0]), t - 1);
    const std::string ts = fmt(t);
    return std::vector<GroupDef>{
        group("gamma_power", {term("gamma(A^(" + ts + "))", [=] { return ev.gamma(at); }),
                              term("gamma(A)^" + ts, [=] { return powb(ev.gamma(a), t); })}),
        group("ess_power", {term("rho_ess(A^(" + ts + "))", [=] { return ev.r(at); }),
                            term("rho_ess(A)^" + ts, [=] { return powb(ev.r(a), t); })}),
        group("gamma_product", {term("gamma(P_1^(t)...P_m^(t))", [=] { return ev.gamma(lhs); }),
                                term("gamma(P_1...P_m)^" + ts, [=] { return powb(ev.gamma(prod), t); })}),
        group("ess_product", {term("rho_ess(P_1^(t)...P_m^(t))", [=] { return ev.r(lhs); }),
                              term("rho_ess(P_1...P_m)^" + ts, [=] { return powb(ev.r(prod), t); })}),
        group("gamma_sup", {term("gamma(A^(" + ts + "))", [=] { return ev.gamma(at); }),
                            term("s^(t-1) gamma(A)", [=] { return scaled(ev.gamma(a), c); })}),
        group("ess_sup", {term("rho_ess(A^(" + ts + "))", [=] { return ev.r(at); }),
                          term("s^(t-1) rho_ess(A)", [=] { return scaled(ev.r(a), c); })})};
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.m = pick(u, 1, 3);
    p.t = pick_of(u, std::vector<double>{1.0, 1.5, 2.0, 3.0});
    return p;
  };
  return s;
}

// ------------------------------------------------------------------ E2

ChainSpec e2() {
  auto s = base("E2", "Weighted Hadamard means of single operators",
                {"gamma(o_j A_j^(a_j)) <= prod_j gamma(A_j)^a_j", "rho_ess(o_j A_j^(a_j)) <= prod_j rho_ess(A_j)^a_j"},
                "m nonnegative infinite matrices bounded on l2; positive alphas with sum >= 1",
                arity("m families", m_count(), 1, 3, {"m", "alphas"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.m >= 1, "E2", "m must be at least 1");
    check_alphas("E2", in.params, in.params.m);
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const auto al = in.params.alphas;
    const auto v = ops(in, 0, in.params.m);
    const FS mean = mix(v, al);
    return std::vector<GroupDef>{
        group("gamma", {term("gamma(o_j P_j^(a_j))", [=] { return ev.gamma(mean); }),
                        term("prod_j gamma(P_j)^a_j",
                             [=] {
                               std::vector<Bracket> b;
                               for (const auto& x : v) b.push_back(ev.gamma(x));
                               return weighted(b, al);
                             })}),
        group("ess", {term("rho_ess(o_j P_j^(a_j))", [=] { return ev.r(mean); }),
                      term("prod_j rho_ess(P_j)^a_j", [=] {
                        std::vector<Bracket> b;
                        for (const auto& x : v) b.push_back(ev.r(x));
                        return weighted(b, al);
                      })})};
  };
  s.draw = [](std::uint64_t trial, const Uniform& u) {
    ChainParams p;
    p.m = pick(u, 1, 3);
    p.alphas = weights_draw(u, trial, p.m);
    return p;
  };
  return s;
}

// ------------------------------------------------------------------ E3

ChainSpec e3() {
  auto s = base("E3", "Products of Hadamard means of single operators",
                {"gamma(prod_i o_j A_ij^(a_j)) <= gamma(o_j (A_1j ... A_kj)^(a_j)) <= prod_j gamma(A_1j ... A_kj)^a_j",
                 "rho_ess(prod_i o_j A_ij^(a_j)) <= rho_ess(o_j (A_1j ... A_kj)^(a_j)) <= prod_j rho_ess(A_1j ... A_kj)^a_j"},
                "k*m nonnegative infinite matrices A_ij (row-major) bounded on l2; positive alphas with sum >= 1",
                arity("k*m families", km_count(), 1, 3, {"k", "m", "alphas"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.k >= 1 && in.params.m >= 1, "E3", "k and m must be at least 1");
    check_alphas("E3", in.params, in.params.m);
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const int k = in.params.k, m = in.params.m;
    const auto al = in.params.alphas;
    std::vector<FS> rows, cols;
    for (int i = 0; i < k; ++i) rows.push_back(mix(ops(in, i * m, m), al));
    for (int j = 0; j < m; ++j) {
      std::vector<FS> c;
      for (int i = 0; i < k; ++i) c.push_back(op(in, i * m + j));
      cols.push_back(product(c));
    }
    const FS a = product(rows), c = mix(cols, al);
    auto chain = [=](const std::string& name, auto f, const std::string& fn) {
      return group(name, {term(fn + "(prod_i o_j A_ij^(a_j))", [=] { return f(a); }),
                          term(fn + "(o_j (A_1j...A_kj)^(a_j))", [=] { return f(c); }),
                          term("prod_j " + fn + "(A_1j...A_kj)^a_j", [=] {
                            std::vector<Bracket> b;
                            for (const auto& x : cols) b.push_back(f(x));
                            return weighted(b, al);
                          })});
    };
    return std::vector<GroupDef>{chain("gamma", [ev](const FS& x) { return ev.gamma(x); }, "gamma"),
                                 chain("ess", [ev](const FS& x) { return ev.r(x); }, "rho_ess")};
  };
  s.draw = [](std::uint64_t trial, const Uniform& u) {
    ChainParams p;
    p.k = pick(u, 1, 3);
    p.m = pick(u, 1, 3);
    p.alphas = weights_draw(u, trial, p.m);
    return p;
  };
  return s;
}

// ------------------------------------------------------------------ E4

ChainSpec e4() {
  auto s = base(
      "E4", "Essential set radii of products of Hadamard means",
      {"r(o_j S_j^(a_j)) <= r(o_j (S_j^n)^(a_j))^(1/n) <= prod_j r(S_j)^a_j",
       "r(prod_i o_j S_ij^(a_j)) <= r(o_j C_j^(a_j)) <= r(o_j (C_j^n)^(a_j))^(1/n) <= prod_j r(C_j)^a_j, "
       "C_j = S_1j ... S_kj",
       "r(S_1^(t) ... S_k^(t)) <= r((S_1 ... S_k)^(t)) <= r(((S_1 ... S_k)^n)^(t))^(1/n) <= r(S_1 ... S_k)^t",
       "r(o_j S_j^(1/m)) <= r(S_1 ... S_m)^(1/m)", "r is the generalized or joint essential spectral radius"},
      "k*m bounded sets S_ij (row-major) of nonnegative infinite matrices on l2; positive alphas with sum >= 1; n >= 1; "
      "t >= 1",
      arity("k*m family sets", km_count(), 2, 2, {"k", "m", "n", "alphas", "t"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.k >= 1 && in.params.m >= 1, "E4", "k and m must be at least 1");
    check_n("E4", in.params);
    check_alphas("E4", in.params, in.params.m);
    require(in.params.t >= 1, "E4", "t must be at least 1");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const int k = in.params.k, m = in.params.m, n = in.params.n;
    const auto al = in.params.alphas;
    const double t = in.params.t;
    const std::string ns = std::to_string(n), ts = fmt(t);
    const auto row1 = ops(in, 0, m);
    std::vector<FS> rows, cols, col1;
    for (int i = 0; i < k; ++i) rows.push_back(mix(ops(in, i * m, m), al));
    for (int j = 0; j < m; ++j) {
      std::vector<FS> c;
      for (int i = 0; i < k; ++i) c.push_back(op(in, i * m + j));
      cols.push_back(product(c));
    }
    for (int i = 0; i < k; ++i) col1.push_back(op(in, i * m));
    const FS p1 = product(col1);
    auto rs = [ev](const std::vector<FS>& v) {
      std::vector<Bracket> b;
      for (const auto& x : v) b.push_back(ev.r(x));
      return b;
    };
    return std::vector<GroupDef>{
        group("row_mean", {term("r(o_j S_1j^(a_j))", [=] { return ev.r(mix(row1, al)); }),
                           term("r(o_j (S_1j^" + ns + ")^(a_j))^(1/" + ns + ")",
                                [=] { return powb(ev.r(mix(powers(row1, n), al)), 1.0 / n); }),
                           term("prod_j r(S_1j)^a_j", [=] { return weighted(rs(row1), al); })}),
        group("product_mean", {term("r(prod_i o_j S_ij^(a_j))", [=] { return ev.r(product(rows)); }),
                               term("r(o_j C_j^(a_j))", [=] { return ev.r(mix(cols, al)); }),
                               term("r(o_j (C_j^" + ns + ")^(a_j))^(1/" + ns + ")",
                                    [=] { return powb(ev.r(mix(powers(cols, n), al)), 1.0 / n); }),
                               term("prod_j r(C_j)^a_j", [=] { return weighted(rs(cols), al); })}),
        group("column_power",
              {term("r(S_11^(" + ts + ")...S_k1^(" + ts + "))", [=] { return ev.r(product(hpowers(col1, t))); }),
               term("r((S_11...S_k1)^(" + ts + "))", [=] { return ev.r(hpow(p1, t)); }),
               term("r(((S_11...S_k1)^" + ns + ")^(" + ts + "))^(1/" + ns + ")",
                    [=] { return powb(ev.r(hpow(spow(p1, n), t)), 1.0 / n); }),
               term("r(S_11...S_k1)^" + ts, [=] { return powb(ev.r(p1), t); })}),
        group("geometric_mean", {term("r(o_j S_1j^(1/m))", [=] { return ev.r(mix_same(row1, 1.0 / m)); }),
                                 term("r(S_11...S_1m)^(1/m)", [=] { return powb(ev.r(product(row1)), 1.0 / m); })})};
  };
  s.draw = [](std::uint64_t trial, const Uniform& u) {
    ChainParams p;
    p.k = pick(u, 1, 2);
    p.m = pick(u, 1, 2);
    p.n = pick(u, 1, 2);
    p.alphas = weights_draw(u, trial, p.m);
    p.t = pick_of(u, std::vector<double>{1.0, 1.5, 2.0});
    return p;
  };
  return s;
}

// ------------------------------------------------------------------ E5

ChainSpec e5() {
  auto s = base("E5", "Essential set radii of sums of Hadamard means",
                {"r(sum_i o_j S_ij^(a_j)) <= r(o_j D_j^(a_j)) <= r(o_j (D_j^n)^(a_j))^(1/n) <= prod_j r(D_j)^a_j",
                 "D_j = S_1j + ... + S_kj", "r is the generalized or joint essential spectral radius"},
                "k*m bounded sets S_ij (row-major) of nonnegative infinite matrices on l2; positive alphas with sum >= "
                "1; n >= 1",
                arity("k*m family sets", km_count(), 2, 2, {"k", "m", "n", "alphas"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.k >= 1 && in.params.m >= 1, "E5", "k and m must be at least 1");
    check_n("E5", in.params);
    check_alphas("E5", in.params, in.params.m);
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const int k = in.params.k, m = in.params.m, n = in.params.n;
    const auto al = in.params.alphas;
    const std::string ns = std::to_string(n);
    std::vector<FS> rows, sums;
    for (int i = 0; i < k; ++i) rows.push_back(mix(ops(in, i * m, m), al));
    for (int j = 0; j < m; ++j) {
      std::vector<FS> c;
      for (int i = 0; i < k; ++i) c.push_back(op(in, i * m + j));
      sums.push_back(sum(c));
    }
    return std::vector<GroupDef>{group(
        "main", {term("r(sum_i o_j S_ij^(a_j))", [=] { return ev.r(sum(rows)); }),
                 term("r(o_j D_j^(a_j))", [=] { return ev.r(mix(sums, al)); }),
                 term("r(o_j (D_j^" + ns + ")^(a_j))^(1/" + ns + ")",
                      [=] { return powb(ev.r(mix(powers(sums, n), al)), 1.0 / n); }),
                 term("prod_j r(D_j)^a_j", [=] {
                   std::vector<Bracket> b;
                   for (const auto& x : sums) b.push_back(ev.r(x));
                   return weighted(b, al);
                 })})};
  };
  s.draw = [](std::uint64_t trial, const Uniform& u) {
    ChainParams p;
    p.k = pick(u, 1, 2);
    p.m = pick(u, 1, 2);
    p.n = pick(u, 1, 2);
    p.alphas = weights_draw(u, trial, p.m);
    return p;
  };
  return s;
}

// ------------------------------------------------------------------ E6

// S(X) = X^(alpha) o (X*)^(beta), elements of X and X* chosen independently;
// a zero beta drops the second factor.
FS sym(const FS& x, double alpha, double beta) { return mix(std::vector<FS>{x, adj(x)}, {alpha, beta}); }

ChainSpec e6() {
  auto s = base(
      "E6", "Symmetrized Hadamard means of sets and their adjoints",
      {"S(X) = X^(alpha) o (X*)^(beta)",
       "r(S(S_1) ... S(S_m)) <= r((S_1...S_m)^(alpha) o ((S_m...S_1)*)^(beta)) <= "
       "r(((S_1...S_m)^n)^(alpha) o (((S_m...S_1)*)^n)^(beta))^(1/n) <= r(S_1...S_m)^alpha r(S_m...S_1)^beta",
       "r(S(X)) <= r(S(X^n))^(1/n) <= r(X)^(alpha+beta)",
       "r(sum_i S(S_i)) <= r(S(sum_i S_i)) <= r(S((sum_i S_i)^n))^(1/n) <= r(sum_i S_i)^(alpha+beta)",
       "r(S(S_1) S(S_2)) <= r((S_1 S_2)^(alpha) o ((S_2 S_1)*)^(beta)) <= r(S_1 S_2)^(alpha+beta)",
       "r(S(X^(2^j)))^(2^-j) is nondecreasing in j and bounded by r(X)^(alpha+beta)"},
      "m bounded sets of nonnegative infinite matrices on l2; alpha > 0, beta >= 0, alpha + beta >= 1; n >= 1",
      arity("m family sets", m_count(), 2, 2, {"m", "n", "alpha", "beta"}));
  s.hypothesis = [](const ChainInput& in) {
    const auto& p = in.params;
    require(p.m >= 1, "E6", "m must be at least 1");
    check_n("E6", p);
    require(p.alpha > 0 && p.beta >= 0, "E6", "alpha must be positive and beta nonnegative");
    require(p.alpha + p.beta >= 1 - 1e-12, "E6", "alpha + beta must be at least 1");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const int m = in.params.m, n = in.params.n;
    const double a = in.params.alpha, b = in.params.beta;
    const std::string ns = std::to_string(n), ab = fmt(a + b);
    const auto v = ops(in, 0, m);
    std::vector<FS> rev(v.rbegin(), v.rend()), sv;
    for (const auto& x : v) sv.push_back(sym(x, a, b));
    const FS fwd = product(v), bwd = product(rev), tot = sum(v), x = v[0];
    auto pair_mix = [a, b](const FS& p, const FS& q) { return mix(std::vector<FS>{p, adj(q)}, {a, b}); };
    std::vector<GroupDef> g{
        group("product", {term("r(S(S_1)...S(S_m))", [=] { return ev.r(product(sv)); }),
                          term("r((S_1...S_m)^(alpha) o ((S_m...S_1)*)^(beta))", [=] { return ev.r(pair_mix(fwd, bwd)); }),
                          term("r(((S_1...S_m)^" + ns + ")^(alpha) o (((S_m...S_1)*)^" + ns + ")^(beta))^(1/" + ns + ")",
                               [=] { return powb(ev.r(pair_mix(spow(fwd, n), spow(bwd, n))), 1.0 / n); }),
                          term("r(S_1...S_m)^alpha r(S_m...S_1)^beta",
                               [=] { return prodb({powb(ev.r(fwd), a), powb(ev.r(bwd), b)}); })}),
        group("power", {term("r(S(S_1))", [=] { return ev.r(sym(x, a, b)); }),
                        term("r(S(S_1^" + ns + "))^(1/" + ns + ")", [=] { return powb(ev.r(sym(spow(x, n), a, b)), 1.0 / n); }),
                        term("r(S_1)^" + ab, [=] { return powb(ev.r(x), a + b); })}),
        group("sum", {term("r(sum_i S(S_i))", [=] { return ev.r(sum(sv)); }),
                      term("r(S(sum_i S_i))", [=] { return ev.r(sym(tot, a, b)); }),
                      term("r(S((sum_i S_i)^" + ns + "))^(1/" + ns + ")",
                           [=] { return powb(ev.r(sym(spow(tot, n), a, b)), 1.0 / n); }),
                      term("r(sum_i S_i)^" + ab, [=] { return powb(ev.r(tot), a + b); })})};
    if (m == 2)
      g.push_back(group("pair", {term("r(S(S_1) S(S_2))", [=] { return ev.r(set_product(sv[0], sv[1])); }),
                                 term("r((S_1 S_2)^(alpha) o ((S_2 S_1)*)^(beta))", [=] { return ev.r(pair_mix(fwd, bwd)); }),
                                 term("r(S_1 S_2)^" + ab, [=] { return powb(ev.r(fwd), a + b); })}));
    const int levels = x.size() >= 2 ? 2 : 4;
    std::vector<TermDef> mono;
    for (int j = 0; j <= levels; ++j) {
      const int e = 1 << j;
      mono.push_back(term("r(S(S_1^" + std::to_string(e) + "))^(1/" + std::to_string(e) + ")",
                          [=] { return powb(ev.r(sym(spow(x, e), a, b)), 1.0 / e); }));
    }
    mono.push_back(term("r(S_1)^" + ab, [=] { return powb(ev.r(x), a + b); }));
    g.push_back(group("monotone", std::move(mono)));
    return g;
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.m = pick(u, 1, 3);
    p.n = pick(u, 1, 2);
    p.alpha = pick_of(u, std::vector<double>{0.5, 0.75, 1.0, 1.5});
    p.beta = pick_of(u, std::vector<double>{0.0, 0.25, 0.5, 1.0});
    if (p.alpha + p.beta < 1) p.beta = 1 - p.alpha;
    return p;
  };
  return s;
}

// ------------------------------------------------------------------ E7

ChainSpec e7() {
  auto s = base("E7", "Hadamard powers of one set",
                {"r(S^(m)) <= r(S o ... o S) <= r(S^n o ... o S^n)^(1/n) <= r(S)^m",
                 "r(S^(alpha)) <= r(S^(alpha-1) o S) <= r((S^n)^(alpha-1) o S^n)^(1/n) <= r(S)^alpha",
                 "factors of S o ... o S are chosen independently"},
                "one bounded set S of nonnegative infinite matrices on l2; m >= 1; n >= 1; alpha >= 1",
                arity("1 family set", fixed_count(1), 2, 3, {"m", "n", "alpha"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.m >= 1, "E7", "m must be at least 1");
    check_n("E7", in.params);
    require(in.params.alpha >= 1, "E7", "alpha must be at least 1");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const int m = in.params.m, n = in.params.n;
    const double a = in.params.alpha;
    const std::string ms = std::to_string(m), ns = std::to_string(n), as = fmt(a);
    const FS x = op(in, 0), xn = spow(x, n);
    return std::vector<GroupDef>{
        group("integer", {term("r(S^(" + ms + "))", [=] { return ev.r(hpow(x, m)); }),
                          term("r(S o ... o S)", [=] { return ev.r(mix(std::vector<FS>(m, x), ones(m, 1))); }),
                          term("r(S^" + ns + " o ... o S^" + ns + ")^(1/" + ns + ")",
                               [=] { return powb(ev.r(mix(std::vector<FS>(m, xn), ones(m, 1))), 1.0 / n); }),
                          term("r(S)^" + ms, [=] { return powb(ev.r(x), m); })}),
        group("real", {term("r(S^(" + as + "))", [=] { return ev.r(hpow(x, a)); }),
                       term("r(S^(" + fmt(a - 1) + ") o S)", [=] { return ev.r(mix(std::vector<FS>{x, x}, {a - 1, 1.0})); }),
                       term("r((S^" + ns + ")^(" + fmt(a - 1) + ") o S^" + ns + ")^(1/" + ns + ")",
                            [=] { return powb(ev.r(mix(std::vector<FS>{xn, xn}, {a - 1, 1.0})), 1.0 / n); }),
                       term("r(S)^" + as, [=] { return powb(ev.r(x), a); })})};
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.m = pick(u, 1, 3);
    p.n = pick(u, 1, 2);
    p.alpha = pick_of(u, std::vector<double>{1.0, 1.5, 2.0});
    return p;
  };
  return s;
}

// ------------------------------------------------------------------ E8

ChainSpec e8() {
  auto s = base(
      "E8", "Hadamard means against cyclic products of sets",
      {"C_j = S_j ... S_m S_1 ... S_{j-1}", "D_j = S_j^(alpha m) ... S_m^(alpha m) S_1^(alpha m) ... S_{j-1}^(alpha m)",
       "r(o_j S_j^(alpha)) <= r(o_j C_j^(alpha))^(1/m) <= r(o_j (C_j^n)^(alpha))^(1/(mn)) <= r(S_1...S_m)^alpha",
       "r(o_j S_j^(alpha)) <= r(S_1^(alpha m)...S_m^(alpha m))^(1/m) <= r((S_1...S_m)^(alpha m))^(1/m) <= "
       "r(((S_1...S_m)^n)^(alpha m))^(1/(nm)) <= r(S_1...S_m)^alpha",
       "alpha >= 1: r(o_j (C_j^n)^(alpha))^(1/(mn)) <= (prod_j r((C_j^n)^(m)))^(alpha/(m^2 n)) <= r(S_1...S_m)^alpha",
       "alpha >= 1: r(o_j S_j^(alpha)) <= r(o_j D_j^(1/m))^(1/m) <= r(o_j (D_j^n)^(1/m))^(1/(mn)) <= "
       "r(((S_1...S_m)^n)^(alpha m))^(1/(nm)) <= r(S_1...S_m)^alpha"},
      "m bounded sets of nonnegative infinite matrices on l2; alpha >= 1/m; n >= 1",
      arity("m family sets", m_count(), 2, 2, {"m", "n", "alpha"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.m >= 1, "E8", "m must be at least 1");
    check_n("E8", in.params);
    require(in.params.alpha * in.params.m >= 1 - 1e-12, "E8", "alpha must be at least 1/m");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const int m = in.params.m, n = in.params.n;
    const double a = in.params.alpha, am = a * m;
    const std::string ns = std::to_string(n);
    const auto v = ops(in, 0, m);
    const auto vp = hpowers(v, am);
    std::vector<FS> cyc, cycp;
    for (int j = 0; j < m; ++j) {
      std::vector<FS> w, wp;
      for (int q = 0; q < m; ++q) {
        w.push_back(v[(j + q) % m]);
        wp.push_back(vp[(j + q) % m]);
      }
      cyc.push_back(product(w));
      cycp.push_back(product(wp));
    }
    const FS prod = product(v), prodn = spow(prod, n);
    const auto cycn = powers(cyc, n);
    const double inv_mn = 1.0 / (m * n);
    auto lhs = [=] { return term("r(o_j S_j^(alpha))", [=] { return ev.r(mix_same(v, a)); }); };
    auto rhs = [=] { return term("r(S_1...S_m)^alpha", [=] { return powb(ev.r(prod), a); }); };
    auto cyc_terms = [=] {
      return std::vector<TermDef>{lhs(), term("r(o_j C_j^(alpha))^(1/m)", [=] { return powb(ev.r(mix_same(cyc, a)), 1.0 / m); }),
                                  term("r(o_j (C_j^" + ns + ")^(alpha))^(1/(m" + ns + "))",
                                       [=] { return powb(ev.r(mix_same(cycn, a)), inv_mn); })};
    };
    auto tail = [=] {
      return term("r(((S_1...S_m)^" + ns + ")^(alpha m))^(1/(" + ns + "m))", [=] { return powb(ev.r(hpow(prodn, am)), inv_mn); });
    };
    auto t1 = cyc_terms();
    t1.push_back(rhs());
    std::vector<GroupDef> g{
        group("cyclic", t1),
        group("powered", {lhs(), term("r(S_1^(alpha m)...S_m^(alpha m))^(1/m)", [=] { return powb(ev.r(product(vp)), 1.0 / m); }),
                          term("r((S_1...S_m)^(alpha m))^(1/m)", [=] { return powb(ev.r(hpow(prod, am)), 1.0 / m); }),
                          tail(), rhs()})};
    if (a >= 1) {
      auto t3 = cyc_terms();
      t3.push_back(term("prod_j r((C_j^" + ns + ")^(m))^(alpha/(m^2 " + ns + "))", [=] {
        std::vector<Bracket> b;
        for (const auto& c : cycn) b.push_back(powb(ev.r(hpow(c, m)), a / (m * m * n)));
        return prodb(b);
      }));
      t3.push_back(rhs());
      g.push_back(group("cyclic_split", t3));
      g.push_back(group("cyclic_powered",
                        {lhs(), term("r(o_j D_j^(1/m))^(1/m)", [=] { return powb(ev.r(mix_same(cycp, 1.0 / m)), 1.0 / m); }),
                         term("r(o_j (D_j^" + ns + ")^(1/m))^(1/(m" + ns + "))",
                              [=] { return powb(ev.r(mix_same(powers(cycp, n), 1.0 / m)), inv_mn); }),
                         tail(), rhs()}));
    }
    return g;
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.m = pick(u, 1, 3);
    p.n = pick(u, 1, 2);
    p.alpha = pick_of(u, alpha_grid(1.0 / p.m));
    return p;
  };
  return s;
}

// ------------------------------------------------------------------ E9

ChainSpec e9() {
  auto s = base(
      "E9", "Refinements of r(S o T) <= r(ST) for sets",
      {"r(S o T) <= r(S^(2) T^(2))^(1/2) <= r((S o S)(T o T))^(1/2) <= r(ST o ST)^(beta/2) r(TS o TS)^((1-beta)/2) <= r(ST)",
       "r(S o T) <= r(ST o TS)^(1/2) <= r((ST)^(2))^(1/4) r((TS)^(2))^(1/4) <= r(ST o ST)^(1/4) r(TS o TS)^(1/4) <= r(ST)",
       "0 < beta < 1: r(S o T) <= r(ST o TS)^(1/2) <= r((ST)^(1/beta))^(beta/2) r((TS)^(1/(1-beta)))^((1-beta)/2) <= r(ST)",
       "r is the generalized or joint essential spectral radius"},
      "two bounded sets S, T of nonnegative infinite matrices on l2; beta in [0,1]",
      arity("2 family sets", fixed_count(2), 2, 3, {"beta"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.beta >= 0 && in.params.beta <= 1, "E9", "beta must lie in [0,1]");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const FS a = op(in, 0), b = op(in, 1);
    const double beta = in.params.beta;
    const FS ab = set_product(a, b), ba = set_product(b, a);
    auto first_term = [=] { return term("r(S o T)", [=] { return ev.r(set_hadamard_product(a, b)); }); };
    auto last_term = [=] { return term("r(ST)", [=] { return ev.r(ab); }); };
    auto cross = [=] {
      return term("r(ST o TS)^(1/2)", [=] { return powb(ev.r(set_hadamard_product(ab, ba)), 0.5); });
    };
    std::vector<GroupDef> g{
        group("squares",
              {first_term(), term("r(S^(2) T^(2))^(1/2)", [=] { return powb(ev.r(set_product(hpow(a, 2), hpow(b, 2))), 0.5); }),
               term("r((S o S)(T o T))^(1/2)",
                    [=] { return powb(ev.r(set_product(set_hadamard_product(a, a), set_hadamard_product(b, b))), 0.5); }),
               term("r(ST o ST)^(" + fmt(beta / 2) + ") r(TS o TS)^(" + fmt((1 - beta) / 2) + ")",
                    [=] {
                      return prodb({powb(ev.r(set_hadamard_product(ab, ab)), beta / 2),
                                    powb(ev.r(set_hadamard_product(ba, ba)), (1 - beta) / 2)});
                    }),
               last_term()}),
        group("cross", {first_term(), cross(),
                        term("r((ST)^(2))^(1/4) r((TS)^(2))^(1/4)",
                             [=] { return prodb({powb(ev.r(hpow(ab, 2)), 0.25), powb(ev.r(hpow(ba, 2)), 0.25)}); }),
                        term("r(ST o ST)^(1/4) r(TS o TS)^(1/4)",
                             [=] {
                               return prodb({powb(ev.r(set_hadamard_product(ab, ab)), 0.25),
                                             powb(ev.r(set_hadamard_product(ba, ba)), 0.25)});
                             }),
                        last_term()})};
    if (beta > 0 && beta < 1)
      g.push_back(group("unequal", {first_term(), cross(),
                                    term("r((ST)^(" + fmt(1 / beta) + "))^(" + fmt(beta / 2) + ") r((TS)^(" +
                                             fmt(1 / (1 - beta)) + "))^(" + fmt((1 - beta) / 2) + ")",
                                         [=] {
                                           return prodb({powb(ev.r(hpow(ab, 1 / beta)), beta / 2),
                                                         powb(ev.r(hpow(ba, 1 / (1 - beta))), (1 - beta) / 2)});
                                         }),
                                    last_term()}));
    return g;
  };
  s.draw = [](std::uint64_t trial, const Uniform&) {
    ChainParams p;
    p.beta = beta_grid()[trial % beta_grid().size()];
    return p;
  };
  return s;
}

// ----------------------------------------------------------------- E10

ChainSpec e10() {
  auto s = base(
      "E10", "Refinements of rho_ess(A o B) <= rho_ess(AB)",
      {"rho_ess(A o B) <= rho_ess((A o A)(B o B))^(1/2) <= rho_ess(AB o AB)^(beta/2) rho_ess(BA o BA)^((1-beta)/2) <= "
       "rho_ess(AB)",
       "0 < beta < 1: rho_ess(A o B) <= rho_ess(AB o BA)^(1/2) <= rho_ess((AB)^(1/beta))^(beta/2) "
       "rho_ess((BA)^(1/(1-beta)))^((1-beta)/2) <= rho_ess(AB)"},
      "A, B nonnegative infinite matrices bounded on l2; beta in [0,1]",
      arity("2 families", fixed_count(2), 1, 3, {"beta"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.beta >= 0 && in.params.beta <= 1, "E10", "beta must lie in [0,1]");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const FS a = op(in, 0), b = op(in, 1);
    const double beta = in.params.beta;
    const FS ab = set_product(a, b), ba = set_product(b, a);
    std::vector<GroupDef> g{group(
        "squares",
        {term("rho_ess(A o B)", [=] { return ev.r(set_hadamard_product(a, b)); }),
         term("rho_ess((A o A)(B o B))^(1/2)",
              [=] { return powb(ev.r(set_product(set_hadamard_product(a, a), set_hadamard_product(b, b))), 0.5); }),
         term("rho_ess(AB o AB)^(" + fmt(beta / 2) + ") rho_ess(BA o BA)^(" + fmt((1 - beta) / 2) + ")",
              [=] {
                return prodb({powb(ev.r(set_hadamard_product(ab, ab)), beta / 2),
                              powb(ev.r(set_hadamard_product(ba, ba)), (1 - beta) / 2)});
              }),
         term("rho_ess(AB)", [=] { return ev.r(ab); })})};
    if (beta > 0 && beta < 1)
      g.push_back(group(
          "unequal",
          {term("rho_ess(A o B)", [=] { return ev.r(set_hadamard_product(a, b)); }),
           term("rho_ess(AB o BA)^(1/2)", [=] { return powb(ev.r(set_hadamard_product(ab, ba)), 0.5); }),
           term("rho_ess((AB)^(" + fmt(1 / beta) + "))^(" + fmt(beta / 2) + ") rho_ess((BA)^(" + fmt(1 / (1 - beta)) +
                    "))^(" + fmt((1 - beta) / 2) + ")",
                [=] {
                  return prodb({powb(ev.r(hpow(ab, 1 / beta)), beta / 2), powb(ev.r(hpow(ba, 1 / (1 - beta))), (1 - beta) / 2)});
                }),
           term("rho_ess(AB)", [=] { return ev.r(ab); })}));
    return g;
  };
  s.draw = [](std::uint64_t trial, const Uniform&) {
    ChainParams p;
    p.beta = beta_grid()[trial % beta_grid().size()];
    return p;
  };
  return s;
}

// Words in the operands: letters (index, starred).

std::vector<FS> word_sets(const ChainInput& in, const std::vector<Word>& ws) {
  std::vector<FS> out;
  for (const auto& w : ws) out.push_back(wset(in, w));
  return out;
}

std::vector<Word> pair_rotations(const Word& w) {
  std::vector<Word> out;
  for (std::size_t j = 0; 2 * j < w.size(); ++j) out.push_back(rotate(w, 2 * j));
  return out;
}

// Word P_{i_1}* P_{j_1} from 1-based indices.
Word star_pair(int i, int j) { return Word{{i - 1, true}, {j - 1, false}}; }

std::vector<int> perm_draw(const Uniform& u, int m) { return random_perm(u, m); }

// ----------------------------------------------------------------- E11

ChainSpec e11() {
  auto s = base("E11", "Hadamard means of a set with its adjoint",
                {"r(S^(alpha) o (S*)^(alpha)) <= r(S^(alpha) o S^(alpha)) <= r(S)^(2 alpha)",
                 "rho_ess(A^(alpha) o (A*)^(alpha)) <= rho_ess(A^(alpha) o A^(alpha)) <= rho_ess(A)^(2 alpha)"},
                "one bounded set S of nonnegative infinite matrices on l2, A its first element; alpha >= 1/2",
                arity("1 family set", fixed_count(1), 2, 3, {"alpha"}));
  s.hypothesis = [](const ChainInput& in) { require(in.params.alpha >= 0.5, "E11", "alpha must be at least 1/2"); };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const double a = in.params.alpha;
    const std::string as = fmt(2 * a);
    auto chain = [=](const std::string& name, const FS& x, const std::string& n, const std::string& r) {
      return group(name, {term(r + "(" + n + "^(alpha) o (" + n + "*)^(alpha))",
                               [=] { return ev.r(mix(std::vector<FS>{x, adj(x)}, {a, a})); }),
                          term(r + "(" + n + "^(alpha) o " + n + "^(alpha))",
                               [=] { return ev.r(mix(std::vector<FS>{x, x}, {a, a})); }),
                          term(r + "(" + n + ")^" + as, [=] { return powb(ev.r(x), 2 * a); })});
    };
    const FS x = op(in, 0);
    return std::vector<GroupDef>{chain("set", x, "S", "r"), chain("single", first(x), "A", "rho_ess")};
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.alpha = pick_of(u, alpha_grid(0.5));
    return p;
  };
  return s;
}

// ----------------------------------------------------------------- E12

bool diagonal_only(const Fam& a) {
  if (a.corner()) return false;
  for (const auto& b : a.bands())
    if (b.offset != 0) return false;
  return true;
}

ChainSpec e12() {
  auto s = base("E12", "Measure of noncompactness through T*T on l2",
                {"rho_ess(T*T) = rho_ess(TT*) = gamma(T*T) = gamma(TT*) = gamma(T)^2", "gamma(T) = gamma(T*)",
                 "T diagonal: rho_ess(T) = gamma(T)",
                 "gamma(S) = r(S*S)^(1/2) = r(SS*)^(1/2) = r-hat(S*S)^(1/2) = r-hat(SS*)^(1/2)", "gamma(S*) = gamma(S)"},
                "one bounded set S of nonnegative infinite matrices on l2, T its first element",
                arity("1 family set", fixed_count(1), 2, 3, {}));
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const FS x = op(in, 0), t = first(x);
    const FS tt = set_product(adj(t), t), tt2 = set_product(t, adj(t));
    const FS ss = set_product(adj(x), x), ss2 = set_product(x, adj(x));
    std::vector<GroupDef> g{
        group("star_product",
              {term("rho_ess(T*T)", [=] { return ev.r(tt); }), term("rho_ess(TT*)", [=] { return ev.r(tt2); }),
               term("gamma(T*T)", [=] { return ev.gamma(tt); }), term("gamma(TT*)", [=] { return ev.gamma(tt2); }),
               term("gamma(T)^2", [=] { return powb(ev.gamma(t), 2); })},
              std::vector<Link>(4, Link::eq)),
        group("adjoint", {term("gamma(T)", [=] { return ev.gamma(t); }), term("gamma(T*)", [=] { return ev.gamma(adj(t)); })},
              {Link::eq}),
        group("set_star_product",
              {term("gamma(S)", [=] { return ev.gamma(x); }), term("r(S*S)^(1/2)", [=] { return powb(ev.r(ss), 0.5); }),
               term("r(SS*)^(1/2)", [=] { return powb(ev.r(ss2), 0.5); }),
               term("r-hat(S*S)^(1/2)", [=] { return powb(ev.r(ss), 0.5); }),
               term("r-hat(SS*)^(1/2)", [=] { return powb(ev.r(ss2), 0.5); })},
              std::vector<Link>(4, Link::eq)),
        group("set_adjoint", {term("gamma(S*)", [=] { return ev.gamma(adj(x)); }), term("gamma(S)", [=] { return ev.gamma(x); })},
              {Link::eq})};
    if (diagonal_only(t[0]))
      g.push_back(group("diagonal", {term("rho_ess(T)", [=] { return ev.r(t); }), term("gamma(T)", [=] { return ev.gamma(t); })},
                        {Link::eq}));
    return g;
  };
  return s;
}

// ----------------------------------------------------------------- E13

ChainSpec e13() {
  auto s = base("E13", "Measure of noncompactness of a Hadamard geometric mean",
                {"m even: gamma(o_j S_j^(1/m)) <= (r(S_1* S_2 S_3* ... S_m) r(S_1 S_2* ... S_m*))^(1/(2m)) = "
                 "(r(S_1* S_2 ... S_m) r(S_m S_{m-1}* ... S_1*))^(1/(2m))",
                 "m odd: gamma(o_j S_j^(1/m)) <= r(S_1 S_2* S_3 ... S_m S_1* S_2 ... S_m*)^(1/(2m))"},
                "m bounded sets of nonnegative infinite matrices on l2",
                arity("m family sets", m_count(), 2, 2, {"m"}));
  s.hypothesis = [](const ChainInput& in) { require(in.params.m >= 1, "E13", "m must be at least 1"); };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const int m = in.params.m;
    const double e = 1.0 / (2 * m);
    const FS mean = mix_same(ops(in, 0, m), 1.0 / m);
    auto lhs = term("gamma(o_j S_j^(1/m))", [=] { return ev.gamma(mean); });
    if (m % 2 == 0) {
      const Word w1 = alternating(m, 0, m, 0), w2 = alternating(m, 0, m, 1);
      const FS s1 = wset(in, w1), s2 = wset(in, w2), s2a = wset(in, adjoint_word(w2));
      return std::vector<GroupDef>{group(
          "even",
          {lhs, term("(r(" + word_label(w1, m) + ") r(" + word_label(w2, m) + "))^(1/" + std::to_string(2 * m) + ")",
                     [=] { return powb(prodb({ev.r(s1), ev.r(s2)}), e); }),
           term("(r(" + word_label(w1, m) + ") r(" + word_label(adjoint_word(w2), m) + "))^(1/" + std::to_string(2 * m) + ")",
                [=] { return powb(prodb({ev.r(s1), ev.r(s2a)}), e); })},
          {Link::le, Link::eq})};
    }
    const Word w = alternating(m, 0, 2 * m, 1);
    const FS sw = wset(in, w);
    return std::vector<GroupDef>{group(
        "odd", {lhs, term("r(" + word_label(w, m) + ")^(1/" + std::to_string(2 * m) + ")", [=] { return powb(ev.r(sw), e); })})};
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.m = pick(u, 1, 4);
    return p;
  };
  return s;
}

// ----------------------------------------------------------------- E14

ChainSpec e14() {
  auto s = base("E14", "Geometric mean of two sets through S*T",
                {"gamma(S^(1/2) o T^(1/2)) <= r((S*T)^(1/2) o (T*S)^(1/2))^(1/2) <= r(S*T)^(1/2) = r(ST*)^(1/2)",
                 "rho_ess(A^(1/2) o B^(1/2)) <= rho_ess((A*B)^(1/2) o (B*A)^(1/2))^(1/2) <= rho_ess(A*B)^(1/2) = "
                 "rho_ess(AB*)^(1/2)"},
                "two bounded sets S, T of nonnegative infinite matrices on l2; A, B their first elements",
                arity("2 family sets", fixed_count(2), 2, 3, {}));
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    auto chain = [=](const std::string& name, const FS& a, const FS& b, bool sets) {
      const std::string r = sets ? "r" : "rho_ess", x = sets ? "S" : "A", y = sets ? "T" : "B";
      const FS mean = mix_same(std::vector<FS>{a, b}, 0.5);
      const FS ab = set_product(adj(a), b), ba = set_product(adj(b), a);
      return group(name,
                   {term((sets ? "gamma(" : "rho_ess(") + x + "^(1/2) o " + y + "^(1/2))",
                         [=] { return sets ? ev.gamma(mean) : ev.r(mean); }),
                    term(r + "((" + x + "*" + y + ")^(1/2) o (" + y + "*" + x + ")^(1/2))^(1/2)",
                         [=] { return powb(ev.r(mix_same(std::vector<FS>{ab, ba}, 0.5)), 0.5); }),
                    term(r + "(" + x + "*" + y + ")^(1/2)", [=] { return powb(ev.r(ab), 0.5); }),
                    term(r + "(" + x + y + "*)^(1/2)", [=] { return powb(ev.r(set_product(a, adj(b))), 0.5); })},
                   {Link::le, Link::le, Link::eq});
    };
    const FS a = op(in, 0), b = op(in, 1);
    return std::vector<GroupDef>{chain("set", a, b, true), chain("single", first(a), first(b), false)};
  };
  return s;
}

// ----------------------------------------------------------------- E15

ChainSpec e15() {
  auto s = base(
      "E15", "Weighted geometric means through alternating words",
      {"m even: gamma(o_j S_j^(alpha)) <= r(o_j W_j^(alpha))^(1/m) <= (r(S_1* S_2 ... S_m) r(S_m S_{m-1}* ... S_1*))^(alpha/2), "
       "W_j = cyclic alternating word of length m starting at S_{j+1}*",
       "m odd: gamma(o_j S_j^(alpha)) <= r(o_j V_j^(alpha))^(1/(2m)) <= r(S_1 S_2* ... S_m*)^(alpha/2), "
       "V_j = cyclic alternating word of length 2m starting at S_{j+1}*",
       "alpha >= 1/2: gamma(S^(alpha) o T^(alpha)) <= r((S*T)^(alpha) o (T*S)^(alpha))^(1/2) <= r(S*T)^alpha = r(ST*)^alpha",
       "alpha >= 1/2: gamma(S^(alpha) o T^(alpha)) <= r((S*T)^(alpha) o (T*S)^(alpha))^(1/2) <= "
       "r((S*T)^(alpha) o (S*T)^(alpha))^(1/2) <= r(S*T)^alpha"},
      "m bounded sets of nonnegative infinite matrices on l2; alpha >= 1/m",
      arity("m family sets", m_count(), 2, 2, {"m", "alpha"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.m >= 1, "E15", "m must be at least 1");
    require(in.params.alpha * in.params.m >= 1 - 1e-12, "E15", "alpha must be at least 1/m");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const int m = in.params.m;
    const double a = in.params.alpha;
    const FS mean = mix_same(ops(in, 0, m), a);
    auto lhs = term("gamma(o_j S_j^(alpha))", [=] { return ev.gamma(mean); });
    std::vector<GroupDef> g;
    if (m % 2 == 0) {
      std::vector<Word> ws;
      for (int j = 0; j < m; ++j) ws.push_back(alternating(m, j, m, 0));
      const FS sig = mix_same(word_sets(in, ws), a);
      const Word w1 = alternating(m, 0, m, 0);
      Word w2;
      for (int q = 0; q < m; ++q) w2.push_back({m - 1 - q, q % 2 == 1});
      const FS s1 = wset(in, w1), s2 = wset(in, w2);
      g.push_back(group("even", {lhs, term("r(o_j W_j^(alpha))^(1/m)", [=] { return powb(ev.r(sig), 1.0 / m); }),
                                 term("(r(" + word_label(w1, m) + ") r(" + word_label(w2, m) + "))^(alpha/2)",
                                      [=] { return powb(prodb({ev.r(s1), ev.r(s2)}), a / 2); })}));
    } else {
      std::vector<Word> ws;
      for (int j = 0; j < m; ++j) ws.push_back(alternating(m, j, 2 * m, 0));
      const FS om = mix_same(word_sets(in, ws), a);
      const Word w = alternating(m, 0, 2 * m, 1);
      const FS sw = wset(in, w);
      g.push_back(group("odd", {lhs, term("r(o_j V_j^(alpha))^(1/(2m))", [=] { return powb(ev.r(om), 1.0 / (2 * m)); }),
                                term("r(" + word_label(w, m) + ")^(alpha/2)", [=] { return powb(ev.r(sw), a / 2); })}));
    }
    if (a >= 0.5 && m >= 2) {
      auto pair_chain = [=, &g](const std::string& suffix, const FS& x, const FS& y, bool sets) {
        const std::string r = sets ? "r" : "rho_ess", p = sets ? "S" : "A", q = sets ? "T" : "B";
        const FS mean2 = mix_same(std::vector<FS>{x, y}, a);
        const FS xy = set_product(adj(x), y), yx = set_product(adj(y), x);
        auto first_t = term((sets ? "gamma(" : "rho_ess(") + p + "^(alpha) o " + q + "^(alpha))",
                            [=] { return sets ? ev.gamma(mean2) : ev.r(mean2); });
        auto cross = term(r + "((" + p + "*" + q + ")^(alpha) o (" + q + "*" + p + ")^(alpha))^(1/2)",
                          [=] { return powb(ev.r(mix_same(std::vector<FS>{xy, yx}, a)), 0.5); });
        auto last = term(r + "(" + p + "*" + q + ")^alpha", [=] { return powb(ev.r(xy), a); });
        g.push_back(group("pair" + suffix,
                          {first_t, cross, last,
                           term(r + "(" + p + q + "*)^alpha", [=] { return powb(ev.r(set_product(x, adj(y))), a); })},
                          {Link::le, Link::le, Link::eq}));
        g.push_back(group("pair_square" + suffix,
                          {first_t, cross,
                           term(r + "((" + p + "*" + q + ")^(alpha) o (" + p + "*" + q + ")^(alpha))^(1/2)",
                                [=] { return powb(ev.r(mix_same(std::vector<FS>{xy, xy}, a)), 0.5); }),
                           last}));
      };
      pair_chain("", op(in, 0), op(in, 1), true);
      pair_chain("_single", first(op(in, 0)), first(op(in, 1)), false);
    }
    return g;
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.m = pick(u, 1, 4);
    p.alpha = pick_of(u, alpha_grid(1.0 / p.m));
    return p;
  };
  return s;
}

// ----------------------------------------------------------- E16, E17

GroupDef odd_chain(const ChainInput& in, const EvalConfig& cfg, double a, const std::string& al) {
  EssEval ev{cfg};
  const int m = in.params.m;
  const Word w = alternating(m, 0, 2 * m, 1);
  std::vector<Word> pairs;
  for (int p = 0; p < m; ++p) pairs.push_back(Word{w[2 * p], w[2 * p + 1]});
  std::vector<Word> rots;
  for (int j = 0; j < m; ++j) rots.push_back(rotate(w, 2 * j));
  const FS mean = mix_same(ops(in, 0, m), a), pm = mix_same(word_sets(in, pairs), a), rm = mix_same(word_sets(in, rots), a),
           sw = wset(in, w);
  const double e = 1.0 / (2 * m);
  return group("main", {term("gamma(o_j S_j^(" + al + "))", [=] { return ev.gamma(mean); }),
                        term("r(o_p (S_p S_{p+1}*)^(" + al + "))^(1/2)", [=] { return powb(ev.r(pm), 0.5); }),
                        term("r(o_j R_j^(" + al + "))^(1/(2m))", [=] { return powb(ev.r(rm), e); }),
                        term("r(" + word_label(w, m) + ")^(" + (al == "1/m" ? std::string("1/(2m)") : al + "/2") + ")",
                             [=] { return powb(ev.r(sw), al == "1/m" ? e : a / 2); })});
}

ChainSpec e16() {
  auto s = base("E16", "Odd geometric means through pairs and pair rotations",
                {"W = S_1 S_2* S_3 ... S_m S_1* ... S_m* (length 2m), R_j = W rotated by 2j letters",
                 "gamma(o_j S_j^(1/m)) <= r(o_p (W_{2p+1} W_{2p+2})^(1/m))^(1/2) <= r(o_j R_j^(1/m))^(1/(2m)) <= "
                 "r(W)^(1/(2m))"},
                "m odd; m bounded sets of nonnegative infinite matrices on l2",
                arity("m family sets", m_count(), 2, 1, {"m"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.m >= 1 && in.params.m % 2 == 1, "E16", "m must be odd");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    return std::vector<GroupDef>{odd_chain(in, cfg, 1.0 / in.params.m, "1/m")};
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.m = pick_of(u, std::vector<int>{1, 3, 5});
    return p;
  };
  return s;
}

ChainSpec e17() {
  auto s = base("E17", "Odd weighted means through pairs and pair rotations",
                {"W = S_1 S_2* S_3 ... S_m S_1* ... S_m* (length 2m), R_j = W rotated by 2j letters",
                 "gamma(o_j S_j^(alpha)) <= r(o_p (W_{2p+1} W_{2p+2})^(alpha))^(1/2) <= r(o_j R_j^(alpha))^(1/(2m)) <= "
                 "r(W)^(alpha/2)"},
                "m odd; m bounded sets of nonnegative infinite matrices on l2; alpha >= 1/m",
                arity("m family sets", m_count(), 2, 1, {"m", "alpha"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.m >= 1 && in.params.m % 2 == 1, "E17", "m must be odd");
    require(in.params.alpha * in.params.m >= 1 - 1e-12, "E17", "alpha must be at least 1/m");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    return std::vector<GroupDef>{odd_chain(in, cfg, in.params.alpha, "alpha")};
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.m = pick_of(u, std::vector<int>{1, 3, 5});
    p.alpha = pick_of(u, alpha_grid(1.0 / p.m));
    return p;
  };
  return s;
}

// ----------------------------------------------------------------- E18

ChainSpec e18() {
  auto s = base("E18", "Three-factor mean A^(alpha) o (B*)^(alpha) o A^(alpha)",
                {"gamma(A^(alpha) o (B*)^(alpha) o A^(alpha)) <= r((A*B*)^(alpha) o (A*A)^(alpha) o (BA)^(alpha))^(1/2) <= "
                 "r(X_1^(alpha) o X_2^(alpha) o X_3^(alpha))^(1/6) <= gamma(ABA)^alpha",
                 "X_1 = A*B*A*ABA, X_2 = A*ABAA*B*, X_3 = BAA*B*A*A"},
                "A, B nonnegative infinite matrices bounded on l2; alpha >= 1/3",
                arity("2 families", fixed_count(2), 1, 3, {"alpha"}));
  s.hypothesis = [](const ChainInput& in) { require(in.params.alpha * 3 >= 1 - 1e-12, "E18", "alpha must be at least 1/3"); };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const double a = in.params.alpha;
    const Letter A{0, false}, As{0, true}, B{1, false}, Bs{1, true};
    const FS lhs = mix_same(std::vector<FS>{op(in, 0), adj(op(in, 1)), op(in, 0)}, a);
    const FS mid = mix_same(word_sets(in, {Word{As, Bs}, Word{As, A}, Word{B, A}}), a);
    const FS big = mix_same(word_sets(in, {Word{As, Bs, As, A, B, A}, Word{As, A, B, A, As, Bs}, Word{B, A, As, Bs, As, A}}), a);
    const FS aba = wset(in, Word{A, B, A});
    return std::vector<GroupDef>{group(
        "main", {term("gamma(A^(alpha) o (B*)^(alpha) o A^(alpha))", [=] { return ev.gamma(lhs); }),
                 term("r((A*B*)^(alpha) o (A*A)^(alpha) o (BA)^(alpha))^(1/2)", [=] { return powb(ev.r(mid), 0.5); }),
                 term("r(X_1^(alpha) o X_2^(alpha) o X_3^(alpha))^(1/6)", [=] { return powb(ev.r(big), 1.0 / 6); }),
                 term("gamma(ABA)^alpha", [=] { return powb(ev.gamma(aba), a); })})};
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.alpha = pick_of(u, alpha_grid(1.0 / 3));
    return p;
  };
  return s;
}

// ------------------------------------------------------------ E19-E21

// Sigma_j = S_tau(2j-1)* S_tau(2j) for j <= m/2, followed by their adjoints.
std::vector<Word> sigma_words(const std::vector<int>& tau) {
  const int m = static_cast<int>(tau.size());
  std::vector<Word> out;
  for (int j = 0; j < m / 2; ++j) out.push_back(star_pair(tau[2 * j], tau[2 * j + 1]));
  for (int j = 0; j < m / 2; ++j) out.push_back(adjoint_word(out[j]));
  return out;
}

void check_tau(const ChainInput& in, const std::string& id, bool nu) {
  require_perm(in.params.tau, in.params.m, id, "tau");
  if (nu) require_perm(in.params.nu, in.params.m, id, "nu");
}

ChainSpec e19() {
  auto s = base("E19", "Even means through adjoint pairs chosen by two permutations",
                {"Sigma_j = S_tau(2j-1)* S_tau(2j), Sigma_{m/2+j} = Sigma_j* (j <= m/2)",
                 "Omega_i = i-th rotation (by factors) of Sigma_nu(1) ... Sigma_nu(m)",
                 "gamma(o_j S_j^(alpha)) <= r(o_j Sigma_j^(alpha))^(1/2) <= r(o_i Omega_i^(alpha))^(1/(2m)) <= "
                 "r(Sigma_nu(1) ... Sigma_nu(m))^(alpha/2)"},
                "m even; tau, nu permutations of 1..m; m bounded sets of nonnegative infinite matrices on l2; alpha >= 1/m",
                arity("m family sets", m_count(), 2, 2, {"m", "alpha", "tau", "nu"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.m >= 2 && in.params.m % 2 == 0, "E19", "m must be even");
    check_tau(in, "E19", true);
    require(in.params.alpha * in.params.m >= 1 - 1e-12, "E19", "alpha must be at least 1/m");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const int m = in.params.m;
    const double a = in.params.alpha;
    const auto sig = sigma_words(in.params.tau);
    Word w;
    for (int j : in.params.nu) w = concat(w, sig[static_cast<std::size_t>(j - 1)]);
    const FS mean = mix_same(ops(in, 0, m), a), sm = mix_same(word_sets(in, sig), a),
             om = mix_same(word_sets(in, pair_rotations(w)), a), sw = wset(in, w);
    return std::vector<GroupDef>{group(
        "main", {term("gamma(o_j S_j^(alpha))", [=] { return ev.gamma(mean); }),
                 term("r(o_j Sigma_j^(alpha))^(1/2)", [=] { return powb(ev.r(sm), 0.5); }),
                 term("r(o_i Omega_i^(alpha))^(1/(2m))", [=] { return powb(ev.r(om), 1.0 / (2 * m)); }),
                 term("r(" + word_label(w, m) + ")^(alpha/2)", [=] { return powb(ev.r(sw), a / 2); })})};
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.m = pick_of(u, std::vector<int>{2, 4});
    p.alpha = pick_of(u, alpha_grid(1.0 / p.m));
    p.tau = perm_draw(u, p.m);
    p.nu = perm_draw(u, p.m);
    return p;
  };
  return s;
}

ChainSpec e20() {
  auto s = base("E20", "Even means through half the adjoint pairs",
                {"Sigma_j = S_tau(2j-1)* S_tau(2j), Sigma_{m/2+j} = Sigma_j* (j <= m/2)",
                 "Theta_i = i-th rotation (by factors) of Sigma_1 ... Sigma_{m/2}",
                 "gamma(o_j S_j^(alpha)) <= r(o_{j<=m} Sigma_j^(alpha))^(1/2) <= r(o_{j<=m/2} Sigma_j^(alpha)) = "
                 "r(o_{j<=m/2} (Sigma_j*)^(alpha)) <= r(o_i Theta_i^(alpha))^(2/m) <= "
                 "r(S_tau(1)* S_tau(2) ... S_tau(m-1)* S_tau(m))^alpha"},
                "m even; tau a permutation of 1..m; m bounded sets of nonnegative infinite matrices on l2; alpha >= 2/m",
                arity("m family sets", m_count(), 2, 2, {"m", "alpha", "tau"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.m >= 2 && in.params.m % 2 == 0, "E20", "m must be even");
    check_tau(in, "E20", false);
    require(in.params.alpha * in.params.m >= 2 - 1e-12, "E20", "alpha must be at least 2/m");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const int m = in.params.m;
    const double a = in.params.alpha;
    const auto sig = sigma_words(in.params.tau);
    const std::vector<Word> half(sig.begin(), sig.begin() + m / 2), half_adj(sig.begin() + m / 2, sig.end());
    Word w;
    for (const auto& x : half) w = concat(w, x);
    const FS mean = mix_same(ops(in, 0, m), a), full = mix_same(word_sets(in, sig), a), hm = mix_same(word_sets(in, half), a),
             ha = mix_same(word_sets(in, half_adj), a), th = mix_same(word_sets(in, pair_rotations(w)), a), sw = wset(in, w);
    return std::vector<GroupDef>{group(
        "main",
        {term("gamma(o_j S_j^(alpha))", [=] { return ev.gamma(mean); }),
         term("r(o_{j<=m} Sigma_j^(alpha))^(1/2)", [=] { return powb(ev.r(full), 0.5); }),
         term("r(o_{j<=m/2} Sigma_j^(alpha))", [=] { return ev.r(hm); }),
         term("r(o_{j<=m/2} (Sigma_j*)^(alpha))", [=] { return ev.r(ha); }),
         term("r(o_i Theta_i^(alpha))^(2/m)", [=] { return powb(ev.r(th), 2.0 / m); }),
         term("r(" + word_label(w, m) + ")^alpha", [=] { return powb(ev.r(sw), a); })},
        {Link::le, Link::le, Link::eq, Link::le, Link::le})};
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.m = pick_of(u, std::vector<int>{2, 4});
    p.alpha = pick_of(u, alpha_grid(2.0 / p.m));
    p.tau = perm_draw(u, p.m);
    return p;
  };
  return s;
}

ChainSpec e21() {
  auto s = base("E21", "Means through pairs S_tau(j)* S_nu(j)",
                {"W = S_tau(1)* S_nu(1) ... S_tau(m)* S_nu(m), Omega_j = W rotated by 2j letters",
                 "gamma(o_j S_j^(alpha)) <= r(o_j (S_tau(j)* S_nu(j))^(alpha))^(1/2) <= r(o_j Omega_j^(alpha))^(1/(2m)) <= "
                 "r(W)^(alpha/2)",
                 "m odd, tau(j) = ((2j-2) mod m) + 1, nu(j) = ((2j-1) mod m) + 1: the same chain ends with "
                 "r(W)^(alpha/2) = r(S_1 S_2* ... S_m*)^(alpha/2)"},
                "tau, nu permutations of 1..m; m bounded sets of nonnegative infinite matrices on l2; alpha >= 1/m",
                arity("m family sets", m_count(), 2, 1, {"m", "alpha", "tau", "nu"}));
  s.hypothesis = [](const ChainInput& in) {
    require(in.params.m >= 1, "E21", "m must be at least 1");
    check_tau(in, "E21", true);
    require(in.params.alpha * in.params.m >= 1 - 1e-12, "E21", "alpha must be at least 1/m");
  };
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    EssEval ev{cfg};
    const int m = in.params.m;
    const double a = in.params.alpha;
    const FS mean = mix_same(ops(in, 0, m), a);
    auto chain = [&](const std::string& name, const std::vector<int>& tau, const std::vector<int>& nu, bool closing) {
      std::vector<Word> pairs;
      Word w;
      for (int j = 0; j < m; ++j) {
        pairs.push_back(star_pair(tau[j], nu[j]));
        w = concat(w, pairs.back());
      }
      const FS pm = mix_same(word_sets(in, pairs), a), om = mix_same(word_sets(in, pair_rotations(w)), a), sw = wset(in, w);
      std::vector<TermDef> t{term("gamma(o_j S_j^(alpha))", [=] { return ev.gamma(mean); }),
                             term("r(o_j (S_tau(j)* S_nu(j))^(alpha))^(1/2)", [=] { return powb(ev.r(pm), 0.5); }),
                             term("r(o_j Omega_j^(alpha))^(1/(2m))", [=] { return powb(ev.r(om), 1.0 / (2 * m)); }),
                             term("r(" + word_label(w, m) + ")^(alpha/2)", [=] { return powb(ev.r(sw), a / 2); })};
      std::vector<Link> links(3, Link::le);
      if (closing) {
        const Word alt = alternating(m, 0, 2 * m, 1);
        const FS sa = wset(in, alt);
        t.push_back(term("r(" + word_label(alt, m) + ")^(alpha/2)", [=] { return powb(ev.r(sa), a / 2); }));
        links.push_back(Link::eq);
      }
      return group(name, std::move(t), std::move(links));
    };
    std::vector<GroupDef> g{chain("main", in.params.tau, in.params.nu, false)};
    if (m % 2 == 1) {
      std::vector<int> tau, nu;
      for (int j = 1; j <= m; ++j) {
        tau.push_back((2 * j - 2) % m + 1);
        nu.push_back((2 * j - 1) % m + 1);
      }
      g.push_back(chain("odd_alternating", tau, nu, true));
    }
    return g;
  };
  s.draw = [](std::uint64_t, const Uniform& u) {
    ChainParams p;
    p.m = pick(u, 1, 4);
    p.alpha = pick_of(u, alpha_grid(1.0 / p.m));
    p.tau = perm_draw(u, p.m);
    p.nu = perm_draw(u, p.m);
    return p;
  };
  return s;
}

}  // namespace

std::vector<ChainSpec> essential_catalog() {
  return {e1(),  e2(),  e3(),  e4(),  e5(),  e6(),  e7(),  e8(),  e9(),  e10(), e11(),
          e12(), e13(), e14(), e15(), e16(), e17(), e18(), e19(), e20(), e21()};
}

}  // namespace essrad::reg
