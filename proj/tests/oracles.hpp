#pragma once
// Reference computations used only by the tests. They share no code with the
// library: plain nested vectors, no Eigen, no library algebra.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<double>>;

inline Mat mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b[0].size();
  Mat c(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

/// Coefficients c[0..n] of det(lambda I - A) = sum c[k] lambda^(n-k), c[0] = 1,
/// by the Faddeev-LeVerrier recursion.
inline std::vector<double> char_poly(const Mat& a) {
  const std::size_t n = a.size();
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  Mat m(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k) / k
    Mat am = k == 1 ? Mat(n, std::vector<double>(n, 0.0)) : mul(a, m);
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[k - 1];
    m = am;
    const Mat amk = mul(a, m);
    double tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk[i][i];
    c[k] = -tr / static_cast<double>(k);
  }
  return c;
}

/// All complex roots of a monic polynomial by Durand-Kerner iteration.
inline std::vector<std::complex<double>> roots(const std::vector<double>& c) {
  using C = std::complex<double>;
  const std::size_t n = c.size() - 1;
  auto p = [&](C z) {
    C v = 1.0;
    for (std::size_t k = 1; k <= n; ++k) v = v * z + c[k];
    return v;
  };
  double bound = 1.0;
  for (std::size_t k = 1; k <= n; ++k) bound = std::max(bound, 1.0 + std::abs(c[k]));
  std::vector<C> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(0.5 * bound, 0.4 + 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n));
  for (int it = 0; it < 2000; ++it) {
    double move = 0;
    for (std::size_t k = 0; k < n; ++k) {
      C d = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) d *= z[k] - z[j];
      const C step = p(z[k]) / d;
      z[k] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-15 * bound) break;
  }
  return z;
}

/// Perron root: the largest modulus among the characteristic roots. When mu
/// roots cluster there, the root is polished by Newton's method on the
/// (mu-1)-th derivative of the polynomial, where it is simple; evaluating p
/// itself near a repeated root only resolves it to about sqrt(eps).
inline double perron_root(const Mat& a) {
  const auto c = char_poly(a);
  const auto z = roots(c);
  double r = 0;
  for (const auto& x : z) r = std::max(r, std::abs(x));
  if (r == 0) return 0;
  int mu = 0;
  for (const auto& x : z) mu += std::abs(x - std::complex<double>(r, 0)) < 1e-4 * std::max(1.0, r);
  // Descending coefficients of d^(mu-1)/dx^(mu-1) p.
  std::vector<double> d(c);
  for (int k = 1; k < mu; ++k) {
    const std::size_t deg = d.size() - 1;
    std::vector<double> next(deg);
    for (std::size_t i = 0; i < deg; ++i) next[i] = d[i] * static_cast<double>(deg - i);
    d = next;
  }
  const std::size_t n = d.size() - 1;
  for (int it = 0; it < 60 && n >= 1; ++it) {
    double v = d[0], dv = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      dv = dv * r + v;
      v = v * r + d[k];
    }
    if (dv == 0) break;
    const double next = r - v / dv;
    if (!(std::abs(next - r) < 1e-3 * std::max(1.0, r))) break;
    if (next == r) break;
    r = next;
  }
  return r;
}

/// prod_k A_k(i,j)^w_k entry by entry with 0^w = 0.
inline Mat hadamard_mean(const std::vector<Mat>& as, const std::vector<double>& w) {
  Mat out = as[0];
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out[i].size(); ++j) {
      double v = 1;
      for (std::size_t k = 0; k < as.size(); ++k) v *= as[k][i][j] == 0 ? 0.0 : std::pow(as[k][i][j], w[k]);
      out[i][j] = v;
    }
  return out;
}

/// max over all words of length m over `set` of rho(word)^(1/m), with the
/// Perron roots from the characteristic polynomial.
inline double brute_gen_radius_level(const std::vector<Mat>& set, int m) {
  double best = 0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  for (;;) {
    Mat p = set[idx[0]];
    for (int q = 1; q < m; ++q) p = mul(p, set[idx[static_cast<std::size_t>(q)]]);
    best = std::max(best, std::pow(std::max(0.0, perron_root(p)), 1.0 / m));
    std::size_t q = 0;
    while (q < idx.size() && ++idx[q] == set.size()) idx[q++] = 0;
    if (q == idx.size()) break;
  }
  return best;
}

/// Maximum column sum (l1 operator norm).
inline double norm_l1(const Mat& a) {
  double best = 0;
  for (std::size_t j = 0; j < a[0].size(); ++j) {
    double s = 0;
    for (const auto& row : a) s += std::abs(row[j]);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace oracle
