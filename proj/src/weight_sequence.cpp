#include "essrad/weight_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "essrad/detail/weight_node.hpp"
#include "essrad/errors.hpp"

namespace essrad {

using detail::WeightNode;
using NodePtr = std::shared_ptr<const WeightNode>;

WeightSequence make_sequence(NodePtr n) { return WeightSequence(std::move(n)); }

namespace {

// Relative padding applied to envelopes computed from floating-point samples.
constexpr double kPad = 8 * std::numeric_limits<double>::epsilon();
double pad_up(double x) { return x * (1 + kPad); }
double pad_down(double x) { return std::max(0.0, x * (1 - kPad)); }

// Suffix maxima / minima of a sampled prefix: sup[k] = max(v[k..]).
void suffix_extrema(const std::vector<double>& v, std::vector<double>& hi, std::vector<double>& lo) {
  hi.assign(v.size(), 0.0);
  lo.assign(v.size(), 0.0);
  double h = -std::numeric_limits<double>::infinity();
  double l = std::numeric_limits<double>::infinity();
  for (std::size_t k = v.size(); k-- > 0;) {
    h = std::max(h, v[k]);
    l = std::min(l, v[k]);
    hi[k] = h;
    lo[k] = l;
  }
}

void check_value(double x, const char* what) {
  if (!std::isfinite(x) || x < 0) throw DomainError(std::string(what) + " must be finite and nonnegative");
}

struct ConstantNode final : WeightNode {
  explicit ConstantNode(double c) { scalar = c; }
  WeightSequence::Kind kind() const override { return WeightSequence::Kind::constant; }
  double at(std::int64_t) const override { return scalar; }
  double limit() const override { return scalar; }
  double tail_sup(std::int64_t) const override { return scalar; }
  double tail_inf(std::int64_t) const override { return scalar; }
};

struct EventuallyConstantNode final : WeightNode {
  std::vector<double> hi, lo;
  EventuallyConstantNode(std::vector<double> prefix, double tail) {
    values = std::move(prefix);
    scalar = tail;
    suffix_extrema(values, hi, lo);
  }
  WeightSequence::Kind kind() const override { return WeightSequence::Kind::eventually_constant; }
  double at(std::int64_t i) const override {
    return i <= static_cast<std::int64_t>(values.size()) ? values[i - 1] : scalar;
  }
  double limit() const override { return scalar; }
  double tail_sup(std::int64_t n) const override {
    return n <= static_cast<std::int64_t>(values.size()) ? std::max(hi[n - 1], scalar) : scalar;
  }
  double tail_inf(std::int64_t n) const override {
    return n <= static_cast<std::int64_t>(values.size()) ? std::min(lo[n - 1], scalar) : scalar;
  }
};

struct PrefixLimitNode final : WeightNode {
  std::vector<double> hi, lo;
  PrefixLimitNode(std::vector<double> prefix, double lim) {
    values = std::move(prefix);
    scalar = lim;
    suffix_extrema(values, hi, lo);
  }
  WeightSequence::Kind kind() const override { return WeightSequence::Kind::prefix_limit; }
  std::int64_t p() const { return static_cast<std::int64_t>(values.size()); }
  double at(std::int64_t i) const override {
    if (i <= p()) return values[i - 1];
    const double r = static_cast<double>(p()) / static_cast<double>(i);
    return std::max(0.0, scalar + (values.back() - scalar) * r);
  }
  double limit() const override { return scalar; }
  // Beyond the prefix the tail moves monotonically from w(P) towards L.
  double tail_sup(std::int64_t n) const override {
    const double beyond = std::max(at(std::max(n, p() + 1)), scalar);
    return pad_up(n <= p() ? std::max(hi[n - 1], beyond) : beyond);
  }
  double tail_inf(std::int64_t n) const override {
    const double beyond = std::min(at(std::max(n, p() + 1)), scalar);
    return pad_down(n <= p() ? std::min(lo[n - 1], beyond) : beyond);
  }
};

void trim(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
}

// Cauchy bound: every real root of the polynomial lies in |x| < 1 + max |c_k / c_lead|.
double cauchy_bound(const std::vector<double>& c) {
  if (c.size() <= 1) return 0.0;
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) m = std::max(m, std::abs(c[k] / c.back()));
  return 1.0 + m;
}

double horner(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
  return s;
}

struct RationalNode final : WeightNode {
  // Integer threshold after which the sequence is monotone, plus sampled
  // suffix extrema below it.
  std::int64_t mono = 1;
  std::vector<double> hi, lo;
  double lim = 0.0;

  RationalNode(std::vector<double> p, std::vector<double> q) {
    trim(p);
    trim(q);
    if (q.empty()) throw DomainError("rational weights: denominator is identically zero");
    if (p.size() > q.size()) throw DomainError("rational weights: deg p must not exceed deg q");
    for (double c : p) if (!std::isfinite(c)) throw DomainError("rational weights: non-finite coefficient");
    for (double c : q) if (!std::isfinite(c)) throw DomainError("rational weights: non-finite coefficient");
    if (q.back() < 0) {
      for (double& c : q) c = -c;
      for (double& c : p) c = -c;
    }
    if (!p.empty() && p.back() < 0) throw DomainError("rational weights: sequence is eventually negative");
    values = p;
    values2 = q;
    lim = p.size() == q.size() ? p.back() / q.back() : 0.0;

    // D = p' q - p q' controls monotonicity of p/q on the real axis.
    std::vector<double> d(p.size() + q.size(), 0.0);
    for (std::size_t a = 1; a < p.size(); ++a)
      for (std::size_t b = 0; b < q.size(); ++b) d[a - 1 + b] += a * p[a] * q[b];
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 1; b < q.size(); ++b) d[a + b - 1] -= b * p[a] * q[b];
    // Cancellation can leave tiny leading noise; treat it as zero.
    double scale_d = 0.0;
    for (double c : d) scale_d = std::max(scale_d, std::abs(c));
    for (double& c : d) if (std::abs(c) <= 1e-13 * scale_d) c = 0.0;
    trim(d);

    const double bound = std::max({cauchy_bound(d), cauchy_bound(p), cauchy_bound(q), 1.0});
    constexpr double kMaxSample = 1 << 20;
    if (bound > kMaxSample) throw DomainError("rational weights: coefficients too ill-conditioned to bound");
    mono = static_cast<std::int64_t>(std::ceil(bound)) + 1;

    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(mono));
    for (std::int64_t i = 1; i <= mono; ++i) {
      const double x = static_cast<double>(i);
      const double qv = horner(values2, x);
      const double pv = horner(values, x);
      if (!(qv > 0)) throw DomainError("rational weights: denominator not positive at i=" + std::to_string(i));
      if (pv < 0) throw DomainError("rational weights: numerator negative at i=" + std::to_string(i));
      samples.push_back(pv / qv);
    }
    suffix_extrema(samples, hi, lo);
  }

  WeightSequence::Kind kind() const override { return WeightSequence::Kind::rational; }

  double at(std::int64_t i) const override {
    const double x = static_cast<double>(i);
    if (i < 1024) return std::max(0.0, horner(values, x) / horner(values2, x));
    // Evaluate in u = 1/i to avoid overflow and cancellation for large i.
    const double u = 1.0 / x;
    const std::size_t dq = values2.size() - 1;
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < values2.size(); ++k) {
      const double uk = std::pow(u, static_cast<double>(dq - k));
      den += values2[k] * uk;
      if (k < values.size()) num += values[k] * uk;
    }
    return std::max(0.0, num / den);
  }
  double limit() const override { return lim; }
  double tail_sup(std::int64_t n) const override {
    const double beyond = std::max(at(std::max(n, mono)), lim);
    return pad_up(n < mono ? std::max(hi[n - 1], beyond) : beyond);
  }
  double tail_inf(std::int64_t n) const override {
    const double beyond = std::min(at(std::max(n, mono)), lim);
    return pad_down(n < mono ? std::min(lo[n - 1], beyond) : beyond);
  }
};

struct ShiftNode final : WeightNode {
  ShiftNode(NodePtr c, std::int64_t s) {
    offset = s;
    complexity = 1 + c->complexity;
    children.push_back(std::move(c));
  }
  WeightSequence::Kind kind() const override { return WeightSequence::Kind::shift; }
  double at(std::int64_t i) const override { return i + offset >= 1 ? children[0]->at(i + offset) : 0.0; }
  double limit() const override { return children[0]->limit(); }
  double tail_sup(std::int64_t n) const override { return children[0]->tail_sup(std::max<std::int64_t>(1, n + offset)); }
  double tail_inf(std::int64_t n) const override {
    return n + offset >= 1 ? children[0]->tail_inf(n + offset) : 0.0;
  }
};

struct ProductNode final : WeightNode {
  explicit ProductNode(std::vector<NodePtr> cs) {
    children = std::move(cs);
    for (const auto& c : children) complexity += c->complexity;
  }
  WeightSequence::Kind kind() const override { return WeightSequence::Kind::product; }
  double at(std::int64_t i) const override {
    double r = 1.0;
    for (const auto& c : children) {
      r *= c->at(i);
      if (r == 0.0) break;
    }
    return r;
  }
  double limit() const override {
    double r = 1.0;
    for (const auto& c : children) r *= c->limit();
    return r;
  }
  double tail_sup(std::int64_t n) const override {
    double r = 1.0;
    for (const auto& c : children) r *= c->tail_sup(n);
    return pad_up(r);
  }
  double tail_inf(std::int64_t n) const override {
    double r = 1.0;
    for (const auto& c : children) {
      r *= c->tail_inf(n);
      if (r == 0.0) break;
    }
    return pad_down(r);
  }
};

struct SumNode final : WeightNode {
  explicit SumNode(std::vector<NodePtr> cs) {
    children = std::move(cs);
    for (const auto& c : children) complexity += c->complexity;
  }
  WeightSequence::Kind kind() const override { return WeightSequence::Kind::sum; }
  double at(std::int64_t i) const override {
    double r = 0.0;
    for (const auto& c : children) r += c->at(i);
    return r;
  }
  double limit() const override {
    double r = 0.0;
    for (const auto& c : children) r += c->limit();
    return r;
  }
  double tail_sup(std::int64_t n) const override {
    double r = 0.0;
    for (const auto& c : children) r += c->tail_sup(n);
    return pad_up(r);
  }
  double tail_inf(std::int64_t n) const override {
    double r = 0.0;
    for (const auto& c : children) r += c->tail_inf(n);
    return pad_down(r);
  }
};

double safe_pow(double x, double t) { return x == 0.0 ? 0.0 : std::pow(x, t); }

struct PowerNode final : WeightNode {
  PowerNode(NodePtr c, double t) {
    scalar = t;
    complexity = 1 + c->complexity;
    children.push_back(std::move(c));
  }
  WeightSequence::Kind kind() const override { return WeightSequence::Kind::power; }
  double at(std::int64_t i) const override { return safe_pow(children[0]->at(i), scalar); }
  double limit() const override { return safe_pow(children[0]->limit(), scalar); }
  double tail_sup(std::int64_t n) const override { return pad_up(safe_pow(children[0]->tail_sup(n), scalar)); }
  double tail_inf(std::int64_t n) const override { return pad_down(safe_pow(children[0]->tail_inf(n), scalar)); }
};

struct ScaleNode final : WeightNode {
  ScaleNode(NodePtr c, double k) {
    scalar = k;
    complexity = 1 + c->complexity;
    children.push_back(std::move(c));
  }
  WeightSequence::Kind kind() const override { return WeightSequence::Kind::scale; }
  double at(std::int64_t i) const override { return scalar * children[0]->at(i); }
  double limit() const override { return scalar * children[0]->limit(); }
  double tail_sup(std::int64_t n) const override { return pad_up(scalar * children[0]->tail_sup(n)); }
  double tail_inf(std::int64_t n) const override { return pad_down(scalar * children[0]->tail_inf(n)); }
};

bool all_equal(const std::vector<double>& v, double x) {
  return std::all_of(v.begin(), v.end(), [x](double y) { return y == x; });
}

}  // namespace

WeightSequence WeightSequence::constant(double c) {
  check_value(c, "constant weight");
  return make_sequence(std::make_shared<ConstantNode>(c));
}

WeightSequence WeightSequence::eventually_constant(std::vector<double> prefix, double tail) {
  check_value(tail, "tail value");
  for (double x : prefix) check_value(x, "prefix value");
  if (all_equal(prefix, tail)) return constant(tail);
  return make_sequence(std::make_shared<EventuallyConstantNode>(std::move(prefix), tail));
}

WeightSequence WeightSequence::rational(std::vector<double> p, std::vector<double> q) {
  auto node = std::make_shared<RationalNode>(std::move(p), std::move(q));
  if (node->values.empty()) return constant(0.0);
  if (node->values.size() == 1 && node->values2.size() == 1) return constant(node->values[0] / node->values2[0]);
  return make_sequence(std::move(node));
}

WeightSequence WeightSequence::prefix_with_limit(std::vector<double> prefix, double limit) {
  check_value(limit, "limit");
  for (double x : prefix) check_value(x, "prefix value");
  if (all_equal(prefix, limit)) return constant(limit);
  return make_sequence(std::make_shared<PrefixLimitNode>(std::move(prefix), limit));
}

double WeightSequence::operator()(std::int64_t i) const { return i < 1 ? 0.0 : node_->at(i); }
double WeightSequence::limit() const { return node_->limit(); }
double WeightSequence::tail_sup(std::int64_t n) const { return node_->tail_sup(std::max<std::int64_t>(1, n)); }
double WeightSequence::tail_inf(std::int64_t n) const {
  return n < 1 ? 0.0 : node_->tail_inf(n);
}

WeightSequence::Kind WeightSequence::kind() const { return node_->kind(); }
std::size_t WeightSequence::complexity() const { return node_->complexity; }
bool WeightSequence::is_zero() const { return kind() == Kind::constant && node_->scalar == 0.0; }
double WeightSequence::constant_value() const {
  if (kind() != Kind::constant) throw DomainError("constant_value of a non-constant sequence");
  return node_->scalar;
}

WeightSequence WeightSequence::shifted(std::int64_t s) const {
  if (s == 0) return *this;
  // A forward shift of a constant stays constant; a backward shift introduces zeros.
  if (kind() == Kind::constant && s > 0) return *this;
  if (is_zero()) return *this;
  if (kind() == Kind::shift) {
    const std::int64_t inner = node_->offset;
    // Two shifts compose into one unless a forward inner shift would be
    // masked by the zeros of a backward outer shift.
    if (!(inner > 0 && s < 0)) return make_sequence(node_->children[0]).shifted(inner + s);
  }
  return make_sequence(std::make_shared<ShiftNode>(node_, s));
}

WeightSequence WeightSequence::pow(double t) const {
  if (!(t > 0) || !std::isfinite(t)) throw DomainError("weight power requires t > 0");
  if (t == 1.0) return *this;
  if (kind() == Kind::constant) return constant(safe_pow(node_->scalar, t));
  if (kind() == Kind::power) return make_sequence(node_->children[0]).pow(node_->scalar * t);
  return make_sequence(std::make_shared<PowerNode>(node_, t));
}

WeightSequence WeightSequence::scaled(double c) const {
  check_value(c, "scale factor");
  if (c == 1.0) return *this;
  if (c == 0.0) return constant(0.0);
  if (kind() == Kind::constant) return constant(c * node_->scalar);
  if (kind() == Kind::scale) return make_sequence(node_->children[0]).scaled(c * node_->scalar);
  return make_sequence(std::make_shared<ScaleNode>(node_, c));
}

WeightSequence operator*(const WeightSequence& a, const WeightSequence& b) {
  using K = WeightSequence::Kind;
  if (a.is_zero() || b.is_zero()) return WeightSequence::constant(0.0);
  if (a.kind() == K::constant) return b.scaled(a.constant_value());
  if (b.kind() == K::constant) return a.scaled(b.constant_value());
  std::vector<NodePtr> cs;
  double factor = 1.0;
  auto absorb = [&](const WeightSequence& s) {
    const WeightNode& n = s.node();
    if (n.kind() == K::product) {
      cs.insert(cs.end(), n.children.begin(), n.children.end());
    } else if (n.kind() == K::scale) {
      factor *= n.scalar;
      cs.push_back(n.children[0]);
    } else {
      cs.push_back(s.node_);
    }
  };
  absorb(a);
  absorb(b);
  return make_sequence(std::make_shared<ProductNode>(std::move(cs))).scaled(factor);
}

WeightSequence operator+(const WeightSequence& a, const WeightSequence& b) {
  using K = WeightSequence::Kind;
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.kind() == K::constant && b.kind() == K::constant)
    return WeightSequence::constant(a.constant_value() + b.constant_value());
  std::vector<NodePtr> cs;
  auto absorb = [&](const WeightSequence& s) {
    if (s.kind() == K::sum)
      cs.insert(cs.end(), s.node().children.begin(), s.node().children.end());
    else
      cs.push_back(s.node_);
  };
  absorb(a);
  absorb(b);
  return make_sequence(std::make_shared<SumNode>(std::move(cs)));
}

}  // namespace essrad
