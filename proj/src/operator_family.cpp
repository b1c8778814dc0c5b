#include "essrad/operator_family.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "essrad/errors.hpp"

namespace essrad {

namespace {

void check_complexity(const std::vector<Band>& bands) {
  std::size_t c = 0;
  for (const auto& b : bands) c += b.weights.complexity();
  if (c > OperatorFamily::max_complexity)
    throw ClosureOverflow("operator expression exceeds complexity cap (" + std::to_string(c) + ")");
}

// Shrinks a square corner to the smallest leading block holding all nonzeros.
std::optional<FiniteMatrix> tidy_corner(const Eigen::MatrixXd& m) {
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) k = std::max({k, i + 1, j + 1});
  if (k == 0) return std::nullopt;
  if (static_cast<std::size_t>(k) > OperatorFamily::max_support)
    throw ClosureOverflow("finite-rank corner exceeds support cap (" + std::to_string(k) + ")");
  return FiniteMatrix(Eigen::MatrixXd(m.topLeftCorner(k, k)));
}

std::size_t corner_size(const OperatorFamily& a) { return a.support(); }

// Dense window of the full matrix (bands plus corner) of side k.
Eigen::MatrixXd window(const OperatorFamily& a, std::size_t k) {
  Eigen::MatrixXd m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m(i, j) = a.entry(i + 1, j + 1);
  return m;
}

Eigen::MatrixXd band_window(const OperatorFamily& a, std::size_t k) {
  Eigen::MatrixXd m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m(i, j) = a.band_entry(i + 1, j + 1);
  return m;
}

Eigen::MatrixXd clamp_nonneg(Eigen::MatrixXd m) { return m.cwiseMax(0.0); }

}  // namespace

OperatorFamily::OperatorFamily(std::vector<Band> bands, std::optional<FiniteMatrix> corner) {
  std::map<std::int64_t, WeightSequence> merged;
  for (auto& b : bands) {
    auto it = merged.find(b.offset);
    if (it == merged.end())
      merged.emplace(b.offset, b.weights);
    else
      it->second = it->second + b.weights;
  }
  for (auto& [off, w] : merged)
    if (!w.is_zero()) bands_.push_back(Band{off, w});
  check_complexity(bands_);
  if (corner) {
    if (!corner->square()) throw ShapeError("finite-rank corner must be square");
    corner_ = tidy_corner(corner->eigen());
  }
}

OperatorFamily OperatorFamily::shift(WeightSequence w, std::int64_t offset) {
  return OperatorFamily({Band{offset, std::move(w)}});
}

OperatorFamily OperatorFamily::diagonal(WeightSequence w) { return shift(std::move(w), 0); }

OperatorFamily OperatorFamily::finite_rank(FiniteMatrix corner) { return OperatorFamily({}, std::move(corner)); }

OperatorFamily OperatorFamily::identity() { return diagonal(WeightSequence::constant(1.0)); }

std::int64_t OperatorFamily::max_abs_offset() const {
  std::int64_t m = 0;
  for (const auto& b : bands_) m = std::max(m, b.offset < 0 ? -b.offset : b.offset);
  return m;
}

const Band* OperatorFamily::band(std::int64_t offset) const {
  auto it = std::lower_bound(bands_.begin(), bands_.end(), offset,
                             [](const Band& b, std::int64_t o) { return b.offset < o; });
  return it != bands_.end() && it->offset == offset ? &*it : nullptr;
}

double OperatorFamily::band_entry(std::int64_t i, std::int64_t j) const {
  if (i < 1 || j < 1) return 0.0;
  const Band* b = band(j - i);
  return b ? b->weights(i) : 0.0;
}

double OperatorFamily::entry(std::int64_t i, std::int64_t j) const {
  if (i < 1 || j < 1) return 0.0;
  double v = band_entry(i, j);
  const auto k = static_cast<std::int64_t>(support());
  if (i <= k && j <= k) v += (*corner_)(i - 1, j - 1);
  return v;
}

std::size_t OperatorFamily::complexity() const {
  std::size_t c = 0;
  for (const auto& b : bands_) c += b.weights.complexity();
  return c;
}

bool compatible(const OperatorFamily&, const OperatorFamily&) { return true; }

OperatorFamily weighted_geometric_mean(std::span<const OperatorFamily> as, const WeightVector& w) {
  if (as.empty()) throw ShapeError("weighted_geometric_mean of an empty list");
  if (as.size() != w.size()) throw ShapeError("weighted_geometric_mean: weight count differs from operator count");

  // A band survives only where every factor has one.
  std::vector<Band> bands;
  for (const auto& b0 : as.front().bands()) {
    WeightSequence acc = b0.weights.pow(w[0]);
    bool present = true;
    for (std::size_t k = 1; k < as.size() && present; ++k) {
      const Band* bk = as[k].band(b0.offset);
      if (!bk)
        present = false;
      else
        acc = acc * bk->weights.pow(w[k]);
    }
    if (present) bands.push_back(Band{b0.offset, acc});
  }

  std::size_t k = 0;
  for (const auto& a : as) k = std::max(k, corner_size(a));
  std::optional<FiniteMatrix> corner;
  if (k > 0) {
    Eigen::MatrixXd full = Eigen::MatrixXd::Ones(k, k);
    Eigen::MatrixXd band = Eigen::MatrixXd::Ones(k, k);
    auto powm = [](const Eigen::MatrixXd& m, double t) {
      return m.unaryExpr([t](double x) { return x == 0.0 ? 0.0 : std::pow(x, t); }).eval();
    };
    for (std::size_t j = 0; j < as.size(); ++j) {
      full = full.cwiseProduct(powm(window(as[j], k), w[j]));
      band = band.cwiseProduct(powm(band_window(as[j], k), w[j]));
    }
    corner = FiniteMatrix(clamp_nonneg(full - band));
  }
  return OperatorFamily(std::move(bands), std::move(corner));
}

OperatorFamily hadamard_product(const OperatorFamily& a, const OperatorFamily& b) {
  const OperatorFamily ops[] = {a, b};
  return weighted_geometric_mean(ops, WeightVector({1.0, 1.0}, WeightRegime::sum_ge_one));
}

OperatorFamily hadamard_power(const OperatorFamily& a, double t) {
  if (!(t > 0)) throw DomainError("hadamard_power requires t > 0");
  if (t == 1.0) return a;
  const OperatorFamily ops[] = {a};
  return weighted_geometric_mean(ops, WeightVector::infer({t}));
}

OperatorFamily matrix_product(const OperatorFamily& a, const OperatorFamily& b) {
  std::vector<Band> bands;
  for (const auto& ba : a.bands())
    for (const auto& bb : b.bands())
      bands.push_back(Band{ba.offset + bb.offset, ba.weights * bb.weights.shifted(ba.offset)});

  const auto ka = static_cast<std::int64_t>(corner_size(a));
  const auto kb = static_cast<std::int64_t>(corner_size(b));
  std::optional<FiniteMatrix> corner;
  if (ka > 0 || kb > 0) {
    std::int64_t max_db = 0, min_da = 0;
    for (const auto& x : b.bands()) max_db = std::max(max_db, x.offset);
    for (const auto& x : a.bands()) min_da = std::min(min_da, x.offset);
    const std::int64_t k = std::max({ka > 0 ? ka + max_db : 0, kb > 0 ? kb - min_da : 0, ka, kb});
    if (k > static_cast<std::int64_t>(OperatorFamily::max_support))
      throw ClosureOverflow("product corner exceeds support cap");
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k, k);
    // Corner of A times all of B, then banded part of A times corner of B.
    for (std::int64_t i = 1; i <= ka; ++i)
      for (std::int64_t m = 1; m <= ka; ++m) {
        const double f = (*a.corner())(i - 1, m - 1);
        if (f == 0.0) continue;
        for (std::int64_t j = 1; j <= k; ++j) c(i - 1, j - 1) += f * b.entry(m, j);
      }
    for (std::int64_t i = 1; i <= k; ++i)
      for (std::int64_t m = 1; m <= kb; ++m) {
        const double f = a.band_entry(i, m);
        if (f == 0.0) continue;
        for (std::int64_t j = 1; j <= kb; ++j) c(i - 1, j - 1) += f * (*b.corner())(m - 1, j - 1);
      }
    corner = FiniteMatrix(std::move(c));
  }
  return OperatorFamily(std::move(bands), std::move(corner));
}

OperatorFamily matrix_sum(const OperatorFamily& a, const OperatorFamily& b) {
  std::vector<Band> bands = a.bands();
  bands.insert(bands.end(), b.bands().begin(), b.bands().end());
  const std::size_t k = std::max(corner_size(a), corner_size(b));
  std::optional<FiniteMatrix> corner;
  if (k > 0) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k, k);
    if (a.corner()) c.topLeftCorner(a.support(), a.support()) += a.corner()->eigen();
    if (b.corner()) c.topLeftCorner(b.support(), b.support()) += b.corner()->eigen();
    corner = FiniteMatrix(std::move(c));
  }
  return OperatorFamily(std::move(bands), std::move(corner));
}

OperatorFamily scale(const OperatorFamily& a, double c) {
  if (!(c >= 0)) throw DomainError("scale requires c >= 0");
  std::vector<Band> bands;
  for (const auto& b : a.bands()) bands.push_back(Band{b.offset, b.weights.scaled(c)});
  std::optional<FiniteMatrix> corner;
  if (a.corner()) corner = scale(*a.corner(), c);
  return OperatorFamily(std::move(bands), std::move(corner));
}

OperatorFamily adjoint(const OperatorFamily& a) {
  std::vector<Band> bands;
  for (const auto& b : a.bands()) bands.push_back(Band{-b.offset, b.weights.shifted(-b.offset)});
  std::optional<FiniteMatrix> corner;
  if (a.corner()) corner = adjoint(*a.corner());
  return OperatorFamily(std::move(bands), std::move(corner));
}

FiniteMatrix truncate(const OperatorFamily& a, std::size_t n) {
  if (n == 0) throw ShapeError("truncate requires n >= 1");
  return FiniteMatrix(window(a, n));
}

double tail_bound(const OperatorFamily& a, std::int64_t n) {
  n = std::max<std::int64_t>(1, n);
  double s = 0.0;
  for (const auto& b : a.bands()) s += b.weights.tail_sup(n);
  if (a.corner() && n <= static_cast<std::int64_t>(a.support())) {
    const auto k = static_cast<Eigen::Index>(a.support());
    s += a.corner()->eigen().bottomRows(k - (n - 1)).norm();
  }
  return s;
}

double tail_floor(const OperatorFamily& a, std::int64_t n) {
  double s = 0.0;
  for (const auto& b : a.bands()) s += b.weights.tail_inf(n);
  return s;
}

double entrywise_sup(const OperatorFamily& a) {
  const std::size_t k = a.support();
  double s = 0.0;
  // Only rows whose column index is at least 1 carry entries.
  for (const auto& b : a.bands()) s = std::max(s, b.weights.tail_sup(std::max<std::int64_t>(1, 1 - b.offset)));
  if (k > 0) s = std::max(s, window(a, k).maxCoeff());
  return s;
}

}  // namespace essrad
