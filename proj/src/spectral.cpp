#include "essrad/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "essrad/errors.hpp"

namespace essrad {

Bracket pow(const Bracket& b, double t) {
  auto p = [t](double x) { return x == 0.0 ? 0.0 : std::pow(x, t); };
  return Bracket{p(b.lo), p(b.hi), b.method, b.flagged};
}

Bracket times(const Bracket& a, const Bracket& b) {
  return Bracket{a.lo * b.lo, a.hi * b.hi, a.method + "*" + b.method, a.flagged || b.flagged};
}

Bracket scaled(const Bracket& b, double c) { return Bracket{c * b.lo, c * b.hi, b.method, b.flagged}; }

const char* to_string(SpaceTag s) {
  switch (s) {
    case SpaceTag::l1: return "l1";
    case SpaceTag::l2: return "l2";
    case SpaceTag::linf: return "linf";
  }
  return "l2";
}

SpaceTag space_from_string(const std::string& s) {
  if (s == "l1") return SpaceTag::l1;
  if (s == "l2") return SpaceTag::l2;
  if (s == "linf") return SpaceTag::linf;
  throw DomainError("unknown space \"" + s + "\" (expected l1, l2 or linf)");
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double norm_inf(const Eigen::MatrixXd& m) { return m.rowwise().sum().maxCoeff(); }
double norm_1(const Eigen::MatrixXd& m) { return m.colwise().sum().maxCoeff(); }

// Running bracket for rho(A), fed with bounds on rho(A + sI).
struct Accumulator {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double pad;

  void lower(double lb_shifted, double s) { lo = std::max(lo, lb_shifted * (1 - pad) - s * (1 + 2 * kEps)); }
  void upper(double ub_shifted, double s) { hi = std::min(hi, ub_shifted * (1 + pad) - s * (1 - 2 * kEps)); }
};

// Collatz-Wielandt: for x >= 0, x != 0, min over supp(x) of (Bx)_i / x_i is a
// lower bound for rho(B); when x > 0, the max is an upper bound.
void collatz_wielandt(const Eigen::MatrixXd& b, double s, const Eigen::VectorXd& x, Accumulator& acc) {
  const Eigen::VectorXd y = b * x;
  double mn = std::numeric_limits<double>::infinity();
  double mx = 0.0;
  bool positive = true;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) > 0) {
      const double r = y(i) / x(i);
      mn = std::min(mn, r);
      mx = std::max(mx, r);
    } else {
      positive = false;
    }
  }
  if (std::isfinite(mn)) acc.lower(mn, s);
  if (positive && std::isfinite(mx)) acc.upper(mx, s);
}

}  // namespace

Bracket spectral_radius(const FiniteMatrix& a, const SpectralOptions& opt) {
  if (!a.square()) throw ShapeError("spectral_radius requires a square matrix");
  const Eigen::MatrixXd& A = a.eigen();
  const auto n = A.rows();
  if (n == 1) return exact(A(0, 0), "scalar");
  if (A.maxCoeff() == 0.0) return exact(0.0, "zero");

  Accumulator acc{0.0, std::numeric_limits<double>::infinity(), 16.0 * static_cast<double>(n + 1) * kEps};
  const double shift = norm_inf(A);
  auto done = [&] { return acc.hi - acc.lo <= opt.rel_width * std::max(1.0, acc.hi); };

  // Two tracks: A itself and the primitive-ized A + sI. Each squares a
  // normalized copy of its matrix; the row sums of the k-th square are the
  // power-iteration vector after 2^k steps.
  for (double s : {0.0, shift}) {
    const Eigen::MatrixXd b = A + s * Eigen::MatrixXd::Identity(n, n);
    const double nb = norm_inf(b);
    Eigen::MatrixXd m = b / nb;
    double log_scale = std::log(nb);
    for (int k = 0; k <= opt.max_squarings; ++k) {
      // Gelfand: rho(B) <= ||B^(2^k)||^(2^-k) in any operator norm.
      const double nm = std::min(norm_1(m), norm_inf(m));
      acc.upper(std::exp(std::ldexp(log_scale + std::log(nm), -k)), s);

      const Eigen::VectorXd x = m.rowwise().sum();
      const double xmax = x.maxCoeff();
      if (xmax > 0) {
        collatz_wielandt(b, s, x / xmax, acc);
        for (double thr : {1e-3, 1e-6, 1e-9, 1e-12}) {
          const Eigen::VectorXd xt = (x / xmax).unaryExpr([thr](double v) { return v >= thr ? v : 0.0; });
          collatz_wielandt(b, s, xt, acc);
        }
      }
      if (done()) break;

      m = m * m;
      const double nrm = norm_inf(m);
      if (nrm == 0.0) {
        if (s == 0.0) return exact(0.0, "nilpotent");
        break;
      }
      log_scale = 2 * log_scale + std::log(nrm);
      m /= nrm;
    }
    if (done()) break;
  }

  Bracket out{std::max(0.0, acc.lo), std::max(0.0, acc.hi), "gelfand+cw", false};
  out.lo = std::min(out.lo, out.hi);
  out.flagged = out.width() > opt.flag_width * std::max(1.0, out.hi);
  return out;
}

Bracket operator_norm(const FiniteMatrix& a, SpaceTag space, const SpectralOptions& opt) {
  const Eigen::MatrixXd& A = a.eigen();
  switch (space) {
    case SpaceTag::l1: return exact(norm_1(A), "max_col_sum");
    case SpaceTag::linf: return exact(norm_inf(A), "max_row_sum");
    case SpaceTag::l2: break;
  }
  const FiniteMatrix gram(Eigen::MatrixXd(A.transpose() * A));
  Bracket r = spectral_radius(gram, opt);
  // Entrywise relative rounding in the Gram product moves its Perron root by
  // at most the same relative amount.
  const double g = static_cast<double>(A.rows() + 1) * kEps;
  return Bracket{std::sqrt(r.lo * (1 - g)), std::sqrt(r.hi * (1 + g)), "sqrt_rho_gram", r.flagged};
}

}  // namespace essrad
