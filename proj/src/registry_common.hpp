#pragma once
// Helpers shared by the finite and essential catalogs. Not installed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "essrad/chain.hpp"
#include "essrad/errors.hpp"
#include "essrad/essential.hpp"
#include "essrad/joint.hpp"
#include "essrad/spectral.hpp"

namespace essrad::reg {

using Uniform = std::function<double()>;

// ---------------------------------------------------------------- words

/// Factor of a word: operand index (0-based) and whether it is adjoint.
struct Letter {
  int idx;
  bool star = false;
};
using Word = std::vector<Letter>;

inline std::string name_of(int idx, int total) {
  if (total <= 2) return idx == 0 ? "A" : "B";
  return "P" + std::to_string(idx + 1);
}

inline std::string word_label(const Word& w, int total) {
  std::string s;
  for (const auto& l : w) s += name_of(l.idx, total) + (l.star ? "*" : "");
  return s;
}

/// Letters of the cyclic sequence P_1..P_m repeated, from position `start`,
/// `len` long; the factor at relative position q is starred when
/// (q % 2) == star_parity.
inline Word alternating(int m, int start, int len, int star_parity) {
  Word w;
  for (int q = 0; q < len; ++q) w.push_back({(start + q) % m, (q % 2) == star_parity});
  return w;
}

inline Word rotate(const Word& w, std::size_t by) {
  Word out(w.begin() + static_cast<std::ptrdiff_t>(by % w.size()), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(by % w.size()));
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word adjoint_word(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->idx, !it->star});
  return out;
}

// ----------------------------------------------------------- set algebra

template <class T>
const BasicSet<T>& operand(const ChainInput& in, int k) {
  return std::get<BasicSet<T>>(in.operands.at(static_cast<std::size_t>(k)));
}

template <class T>
BasicSet<T> word_set(const ChainInput& in, const Word& w) {
  if (w.empty()) throw ShapeError("empty word");
  auto letter = [&](const Letter& l) {
    const auto& s = operand<T>(in, l.idx);
    return l.star ? set_adjoint(s) : s;
  };
  BasicSet<T> acc = letter(w.front());
  for (std::size_t i = 1; i < w.size(); ++i) acc = set_product(acc, letter(w[i]));
  return acc;
}

/// Hadamard mean of sets with the given exponents; zero exponents drop the
/// factor.
template <class T>
BasicSet<T> mix(const std::vector<BasicSet<T>>& sets, const std::vector<double>& ex) {
  return set_hadamard_mix(std::span<const BasicSet<T>>(sets), std::span<const double>(ex));
}

template <class T>
BasicSet<T> mix_same(const std::vector<BasicSet<T>>& sets, double a) {
  return mix(sets, std::vector<double>(sets.size(), a));
}

/// X^(t) for t >= 1.
template <class T>
BasicSet<T> hpow(const BasicSet<T>& s, double t) {
  return mix(std::vector<BasicSet<T>>{s}, {t});
}

template <class T>
BasicSet<T> spow(const BasicSet<T>& s, int n) {
  return set_power(s, n);
}

template <class T>
BasicSet<T> product(const std::vector<BasicSet<T>>& f) {
  return set_word(std::span<const BasicSet<T>>(f));
}

template <class T>
BasicSet<T> sum(const std::vector<BasicSet<T>>& f) {
  BasicSet<T> acc = f.at(0);
  for (std::size_t i = 1; i < f.size(); ++i) acc = set_sum(acc, f[i]);
  return acc;
}

template <class T>
BasicSet<T> adj(const BasicSet<T>& s) {
  return set_adjoint(s);
}

// ----------------------------------------------------------- evaluation

inline Bracket powb(const Bracket& b, double e) {
  if (e == 0.0) return exact(1.0, b.method);
  return pow(b, e);
}

inline Bracket prodb(const std::vector<Bracket>& bs) {
  Bracket acc = exact(1.0, "");
  std::string method;
  for (const auto& b : bs) {
    acc = times(acc, b);
    if (method.find(b.method) == std::string::npos) method += (method.empty() ? "" : "*") + b.method;
  }
  acc.method = method;
  return acc;
}

inline Bracket max_bracket(const std::vector<Bracket>& bs) {
  Bracket out{0.0, 0.0, bs.empty() ? "" : bs.front().method, false};
  for (const auto& b : bs) {
    out.lo = std::max(out.lo, b.lo);
    out.hi = std::max(out.hi, b.hi);
    out.flagged = out.flagged || b.flagged;
  }
  return out;
}

/// max over entries of X_ij / Y_ij with 0 / y = 0 and x / 0 = inf for x > 0,
/// over all pairs drawn from singleton sets. Encodes X <= Y entrywise as a
/// term compared against 1.
inline Bracket entry_ratio(const FiniteMatrix& x, const FiniteMatrix& y) {
  double r = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const double a = x(i, j);
      const double b = y(i, j);
      if (a == 0.0) continue;
      r = std::max(r, b == 0.0 ? std::numeric_limits<double>::infinity() : a / b);
    }
  return exact(r, "entry_ratio");
}

/// Finite level: r of a matrix set. Singletons use the Perron bracket; larger
/// sets the branch-and-bound joint radius (equal to the generalized radius
/// for finite sets of matrices).
struct FiniteEval {
  const EvalConfig& cfg;
  Bracket r(const MatrixSet& s) const {
    if (s.size() == 1) return spectral_radius(s[0], cfg.spectral);
    return set_radius(s, RadiusKind::joint_rho, cfg.jsr_delta, cfg.jsr);
  }
  Bracket norm(const MatrixSet& s, SpaceTag space) const {
    std::vector<Bracket> bs;
    for (const auto& a : s) bs.push_back(operator_norm(a, space, cfg.spectral));
    return max_bracket(bs);
  }
};

/// Essential level on l^2: r of a family set is the shared certified bracket
/// for rho_ess and rho-hat_ess; gamma of a set is the sup over its elements.
struct EssEval {
  const EvalConfig& cfg;
  Bracket r(const FamilySet& s) const { return ess_set_radius(s, cfg.ess_set); }
  Bracket gamma(const FamilySet& s) const {
    std::vector<Bracket> bs;
    for (const auto& a : s) bs.push_back(hausdorff_mnc(a, cfg.ess.gamma));
    return max_bracket(bs);
  }
};

template <class T>
struct EvalFor;
template <>
struct EvalFor<FiniteMatrix> {
  using type = FiniteEval;
};
template <>
struct EvalFor<OperatorFamily> {
  using type = EssEval;
};

// ------------------------------------------------------- spec building

inline TermDef term(std::string label, std::function<Bracket()> f) { return TermDef{std::move(label), std::move(f)}; }

inline GroupDef group(std::string name, std::vector<TermDef> terms, std::vector<Link> links = {}) {
  return GroupDef{std::move(name), std::move(terms), std::move(links)};
}

[[noreturn]] inline void reject(const std::string& id, const std::string& why) { throw HypothesisViolation(id + ": " + why); }

inline void require(bool ok, const std::string& id, const std::string& why) {
  if (!ok) reject(id, why);
}

inline void require_perm(const std::vector<int>& p, int m, const std::string& id, const std::string& name) {
  std::vector<int> s = p;
  std::sort(s.begin(), s.end());
  bool ok = static_cast<int>(s.size()) == m;
  for (int i = 0; ok && i < m; ++i) ok = s[static_cast<std::size_t>(i)] == i + 1;
  require(ok, id, name + " must be a permutation of 1..m");
}

inline std::function<int(const ChainParams&)> fixed_count(int c) {
  return [c](const ChainParams&) { return c; };
}
inline std::function<int(const ChainParams&)> m_count() {
  return [](const ChainParams& p) { return p.m; };
}
inline std::function<int(const ChainParams&)> km_count() {
  return [](const ChainParams& p) { return p.k * p.m; };
}

inline std::string fmt(double x) {
  // Shortest of a few fixed forms keeps labels readable and stable.
  if (x == std::floor(x) && std::abs(x) < 1e6) return std::to_string(static_cast<long long>(x));
  for (int d : {2, 3, 4, 6}) {
    const double q = x * d;
    if (std::abs(q - std::round(q)) < 1e-12) return std::to_string(static_cast<long long>(std::round(q))) + "/" + std::to_string(d);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// ----------------------------------------------------------- sampling

inline int pick(const Uniform& u, int lo, int hi) {
  const int v = lo + static_cast<int>(u() * (hi - lo + 1));
  return std::min(v, hi);
}

template <class V>
V pick_of(const Uniform& u, const std::vector<V>& options) {
  return options[static_cast<std::size_t>(pick(u, 0, static_cast<int>(options.size()) - 1))];
}

inline std::vector<int> random_perm(const Uniform& u, int m) {
  std::vector<int> p(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i + 1;
  for (int i = m - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(pick(u, 0, i))]);
  return p;
}

/// Positive weights with the given sum.
inline std::vector<double> random_weights(const Uniform& u, int m, double total) {
  std::vector<double> w(static_cast<std::size_t>(m));
  double s = 0;
  for (auto& x : w) s += (x = 0.2 + u());
  for (auto& x : w) x *= total / s;
  return w;
}

/// Exponent grid starting at a lower bound.
inline std::vector<double> alpha_grid(double lower) {
  std::vector<double> g{lower};
  for (double a : {lower + 0.25, 1.0, 1.5})
    if (a > lower + 1e-12 && std::find(g.begin(), g.end(), a) == g.end()) g.push_back(a);
  return g;
}

inline const std::vector<double>& beta_grid() {
  static const std::vector<double> g{0.0, 0.25, 0.5, 0.75, 1.0};
  return g;
}

inline SpaceTag space_for_trial(std::uint64_t trial) {
  const SpaceTag cycle[] = {SpaceTag::l1, SpaceTag::l2, SpaceTag::linf};
  return cycle[trial % 3];
}

std::vector<ChainSpec> finite_catalog();
std::vector<ChainSpec> essential_catalog();

}  // namespace essrad::reg
