#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "essrad/errors.hpp"
#include "essrad/finite_matrix.hpp"
#include "essrad/operator_family.hpp"
#include "essrad/weight_vector.hpp"

namespace essrad {

/// Finite list of operators of one kind and shape. Duplicates are kept, so
/// cardinalities of derived sets are predictable (|P Q| = |P| |Q|).
template <class T>
class BasicSet {
 public:
  static constexpr std::size_t max_size = std::size_t{1} << 16;

  explicit BasicSet(std::vector<T> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw ShapeError("operator set must be nonempty");
    if (elements_.size() > max_size) throw BudgetExceeded("operator set exceeds " + std::to_string(max_size) + " elements");
    for (const auto& e : elements_)
      if (!compatible(elements_.front(), e)) throw ShapeError("operator set elements have different shapes");
  }
  BasicSet(std::initializer_list<T> elements) : BasicSet(std::vector<T>(elements)) {}

  const std::vector<T>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const T& operator[](std::size_t k) const { return elements_[k]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

 private:
  std::vector<T> elements_;
};

using MatrixSet = BasicSet<FiniteMatrix>;
using FamilySet = BasicSet<OperatorFamily>;
using OperatorSet = std::variant<MatrixSet, FamilySet>;

namespace detail {
inline void check_cardinality(std::size_t a, std::size_t b) {
  if (a != 0 && b > BasicSet<FiniteMatrix>::max_size / a)
    throw BudgetExceeded("set operation would exceed " + std::to_string(BasicSet<FiniteMatrix>::max_size) + " elements");
}
}  // namespace detail

template <class T>
BasicSet<T> singleton(T a) {
  return BasicSet<T>(std::vector<T>{std::move(a)});
}

/// {AB : A in P, B in Q}, ordered by (A, B).
template <class T>
BasicSet<T> set_product(const BasicSet<T>& p, const BasicSet<T>& q) {
  detail::check_cardinality(p.size(), q.size());
  std::vector<T> out;
  out.reserve(p.size() * q.size());
  for (const auto& a : p)
    for (const auto& b : q) out.push_back(matrix_product(a, b));
  return BasicSet<T>(std::move(out));
}

/// Product P_1 P_2 ... P_k of a sequence of sets.
template <class T>
BasicSet<T> set_word(std::span<const BasicSet<T>> factors) {
  if (factors.empty()) throw ShapeError("empty set word");
  BasicSet<T> acc = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) acc = set_product(acc, factors[k]);
  return acc;
}

/// All ordered products of length m; |S^m| = |S|^m.
template <class T>
BasicSet<T> set_power(const BasicSet<T>& s, int m) {
  if (m < 1) throw DomainError("set_power requires m >= 1");
  BasicSet<T> acc = s;
  for (int k = 1; k < m; ++k) acc = set_product(acc, s);
  return acc;
}

/// {A + B : A in P, B in Q}
template <class T>
BasicSet<T> set_sum(const BasicSet<T>& p, const BasicSet<T>& q) {
  detail::check_cardinality(p.size(), q.size());
  std::vector<T> out;
  out.reserve(p.size() * q.size());
  for (const auto& a : p)
    for (const auto& b : q) out.push_back(matrix_sum(a, b));
  return BasicSet<T>(std::move(out));
}

template <class T>
BasicSet<T> set_adjoint(const BasicSet<T>& s) {
  std::vector<T> out;
  out.reserve(s.size());
  for (const auto& a : s) out.push_back(adjoint(a));
  return BasicSet<T>(std::move(out));
}

template <class T>
BasicSet<T> set_hadamard_power(const BasicSet<T>& s, double t) {
  std::vector<T> out;
  out.reserve(s.size());
  for (const auto& a : s) out.push_back(hadamard_power(a, t));
  return BasicSet<T>(std::move(out));
}

/// {A_1^(a_1) o ... o A_m^(a_m) : A_k in S_k}, all cross choices.
template <class T>
BasicSet<T> set_hadamard_mean(std::span<const BasicSet<T>> sets, const WeightVector& w) {
  if (sets.empty()) throw ShapeError("set_hadamard_mean of an empty list");
  if (sets.size() != w.size()) throw ShapeError("set_hadamard_mean: weight count differs from set count");
  std::size_t total = 1;
  for (const auto& s : sets) {
    detail::check_cardinality(total, s.size());
    total *= s.size();
  }
  std::vector<T> out;
  out.reserve(total);
  std::vector<std::size_t> idx(sets.size(), 0);
  std::vector<T> pick;
  for (std::size_t c = 0; c < total; ++c) {
    pick.clear();
    for (std::size_t k = 0; k < sets.size(); ++k) pick.push_back(sets[k][idx[k]]);
    out.push_back(weighted_geometric_mean(std::span<const T>(pick), w));
    for (std::size_t k = sets.size(); k-- > 0;) {
      if (++idx[k] < sets[k].size()) break;
      idx[k] = 0;
    }
  }
  return BasicSet<T>(std::move(out));
}

/// Hadamard mean where exponent-0 factors are dropped (X^(0) contributes
/// nothing). Remaining exponents must sum to at least 1.
template <class T>
BasicSet<T> set_hadamard_mix(std::span<const BasicSet<T>> sets, std::span<const double> exponents) {
  if (sets.size() != exponents.size()) throw ShapeError("set_hadamard_mix: exponent count differs from set count");
  std::vector<BasicSet<T>> kept;
  std::vector<double> ws;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    if (exponents[k] < 0) throw DomainError("negative Hadamard exponent");
    if (exponents[k] == 0) continue;
    kept.push_back(sets[k]);
    ws.push_back(exponents[k]);
  }
  if (kept.empty()) throw DomainError("all Hadamard exponents are zero");
  return set_hadamard_mean(std::span<const BasicSet<T>>(kept), WeightVector::infer(std::move(ws)));
}

/// {A o B : A in P, B in Q}
template <class T>
BasicSet<T> set_hadamard_product(const BasicSet<T>& p, const BasicSet<T>& q) {
  const BasicSet<T> both[] = {p, q};
  return set_hadamard_mean(std::span<const BasicSet<T>>(both), WeightVector({1.0, 1.0}, WeightRegime::sum_ge_one));
}

/// Weighted geometric symmetrization {A^(alpha) o (B*)^(beta) : A, B in S}
/// over independent A, B. Requires alpha, beta >= 0 and alpha + beta >= 1.
template <class T>
BasicSet<T> symmetrization(const BasicSet<T>& s, double alpha, double beta) {
  if (alpha < 0 || beta < 0) throw DomainError("symmetrization requires alpha, beta >= 0");
  if (alpha + beta < 1) throw DomainError("symmetrization requires alpha + beta >= 1");
  const BasicSet<T> both[] = {s, set_adjoint(s)};
  const double ex[] = {alpha, beta};
  return set_hadamard_mix(std::span<const BasicSet<T>>(both), std::span<const double>(ex));
}

}  // namespace essrad
