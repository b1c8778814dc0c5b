#include "essrad/joint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "essrad/errors.hpp"

namespace essrad {

namespace {

double root(double x, int m) { return x == 0.0 ? 0.0 : std::pow(x, 1.0 / m); }

// True when no rotation of w is lexicographically smaller.
bool is_necklace(const std::vector<int>& w) {
  const std::size_t n = w.size();
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const int a = w[(i + r) % n];
      const int b = w[i];
      if (a < b) return false;
      if (a > b) break;
    }
  }
  return true;
}

// Visits every word of length len over {0..k-1} with its product, reusing
// prefix products along the way.
template <class Mat, class Mul, class Visit>
void for_each_word(const std::vector<Mat>& mats, int len, Mul mul, Visit visit) {
  const int k = static_cast<int>(mats.size());
  std::vector<int> word(len, 0);
  std::vector<Mat> prefix;
  prefix.reserve(len);
  prefix.push_back(mats[0]);
  for (int d = 1; d < len; ++d) prefix.push_back(mul(prefix[d - 1], mats[0]));
  while (true) {
    visit(word, prefix.back());
    int d = len - 1;
    while (d >= 0 && word[d] == k - 1) --d;
    if (d < 0) return;
    ++word[d];
    for (int e = d + 1; e < len; ++e) word[e] = 0;
    prefix.erase(prefix.begin() + d, prefix.end());
    for (int e = d; e < len; ++e) prefix.push_back(e == 0 ? mats[word[0]] : mul(prefix[e - 1], mats[word[e]]));
  }
}

// k^len, or a value above cap when it would exceed cap.
std::size_t word_count(std::size_t k, int len, std::size_t cap) {
  std::size_t c = 1;
  for (int i = 0; i < len; ++i) {
    if (c > cap / std::max<std::size_t>(k, 1)) return cap + 1;
    c *= k;
  }
  return c;
}

std::vector<Eigen::MatrixXd> raw(const MatrixSet& s) {
  if (!s[0].square()) throw ShapeError("set radii require square matrices");
  std::vector<Eigen::MatrixXd> out;
  for (const auto& a : s) out.push_back(a.eigen());
  return out;
}

Eigen::MatrixXd mul(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return a * b; }

}  // namespace

std::vector<Bracket> gen_radius_levels(const MatrixSet& s, int m_max, const JointOptions& opt, bool* flagged) {
  if (m_max < 1) throw DomainError("m_max must be at least 1");
  const auto mats = raw(s);
  std::vector<Bracket> levels;
  std::size_t used = 0;
  for (int l = 1; l <= m_max; ++l) {
    const std::size_t n = word_count(mats.size(), l, opt.max_words);
    if (used + n > opt.max_words) {
      if (flagged) *flagged = true;
      break;
    }
    used += n;
    Bracket best{0.0, 0.0, "necklaces", false};
    for_each_word(mats, l, mul, [&](const std::vector<int>& w, const Eigen::MatrixXd& p) {
      if (!is_necklace(w)) return;
      const Bracket r = spectral_radius(FiniteMatrix(p), opt.spectral);
      best.lo = std::max(best.lo, r.lo);
      best.hi = std::max(best.hi, r.hi);
      best.flagged = best.flagged || r.flagged;
    });
    levels.push_back(best);
  }
  return levels;
}

double gen_radius_lb(const MatrixSet& s, int m_max, const JointOptions& opt, bool* flagged) {
  const auto levels = gen_radius_levels(s, m_max, opt, flagged);
  double lb = 0.0;
  for (std::size_t l = 0; l < levels.size(); ++l) lb = std::max(lb, root(levels[l].lo, static_cast<int>(l + 1)));
  return lb;
}

double joint_radius_ub(const MatrixSet& s, int m_max, SpaceTag space, const JointOptions& opt, bool* flagged) {
  if (m_max < 1) throw DomainError("m_max must be at least 1");
  const auto mats = raw(s);
  double ub = std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  for (int m = 1; m <= m_max; ++m) {
    const std::size_t n = word_count(mats.size(), m, opt.max_words);
    if (used + n > opt.max_words) {
      if (flagged) *flagged = true;
      break;
    }
    used += n;
    double level = 0.0;
    for_each_word(mats, m, mul, [&](const std::vector<int>&, const Eigen::MatrixXd& p) {
      level = std::max(level, operator_norm(FiniteMatrix(p), space, opt.spectral).hi);
    });
    ub = std::min(ub, root(level, m));
  }
  return ub;
}

namespace {

struct BestWord {
  double lb = 0.0;
  std::vector<int> word;
};

BestWord best_necklace(const std::vector<Eigen::MatrixXd>& mats, int depth, const SpectralOptions& opt) {
  BestWord best;
  for (int l = 1; l <= depth; ++l) {
    for_each_word(mats, l, mul, [&](const std::vector<int>& w, const Eigen::MatrixXd& p) {
      if (!is_necklace(w)) return;
      const double r = root(spectral_radius(FiniteMatrix(p), opt).lo, l);
      // Prefer shorter words on near-ties; they make smaller certificates.
      if (r > best.lb * (1 + 1e-12) || best.word.empty()) best = BestWord{std::max(r, best.lb), w};
    });
  }
  return best;
}

// Is w below some convex combination of the columns in vs (scaled by 1/need)?
// The weights come from an approximate game solve, but acceptance is decided
// by checking the combination exactly, so a false "yes" is impossible.
bool dominated(const std::vector<Eigen::VectorXd>& vs, const Eigen::VectorXd& w, double need) {
  const Eigen::Index n = w.size();
  auto covers = [&](const Eigen::VectorXd& c) {
    for (Eigen::Index i = 0; i < n; ++i)
      if (c(i) < need * w(i)) return false;
    return true;
  };
  for (const auto& v : vs)
    if (covers(v)) return true;
  std::vector<double> row(n, 1.0);
  std::vector<double> count(vs.size(), 0.0);
  constexpr int kRounds = 240;
  constexpr double kRate = 0.1;
  for (int t = 1; t <= kRounds; ++t) {
    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t j = 0; j < vs.size(); ++j) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < n; ++i)
        if (w(i) > 0) s += row[i] * vs[j](i) / w(i);
      if (s > best_val) {
        best_val = s;
        best = j;
      }
    }
    count[best] += 1.0;
    double mx = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (w(i) > 0) row[i] *= std::exp(-kRate * std::min(vs[best](i) / w(i), 10.0));
      mx = std::max(mx, row[i]);
    }
    for (auto& r : row) r /= mx;
    if (t % 20 == 0) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
      for (std::size_t j = 0; j < vs.size(); ++j) c += (count[j] / t) * vs[j];
      if (covers(c)) return true;
    }
  }
  return false;
}

// Tries to certify rho-hat(S) <= scale by closing a downward-closed convex
// hull of nonnegative vectors under S / scale. The seed is the Perron vector
// of the candidate extremal product.
bool invariant_cone(const std::vector<Eigen::MatrixXd>& mats, const std::vector<int>& word, double scale,
                    std::size_t cap) {
  const Eigen::Index n = mats[0].rows();
  std::vector<Eigen::MatrixXd> m;
  for (const auto& a : mats) m.push_back(a / scale);
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n);
  for (int i : word) p = p * m[i];
  if (p.maxCoeff() == 0.0) return false;
  p /= p.maxCoeff();
  for (int k = 0; k < 60; ++k) {
    p = p * p;
    const double mx = p.maxCoeff();
    if (mx == 0.0) return false;
    p /= mx;
  }
  Eigen::VectorXd v0 = p.rowwise().sum();
  v0 /= v0.maxCoeff();

  constexpr double kNeed = 1 + 1e-12;  // absorbs rounding in a * v
  std::vector<Eigen::VectorXd> vs{v0};
  std::size_t head = 0;
  while (true) {
    while (head < vs.size()) {
      if (vs.size() > cap) return false;
      const Eigen::VectorXd v = vs[head++];
      for (const auto& a : m) {
        Eigen::VectorXd w = a * v;
        if (!dominated(vs, w, kNeed)) vs.push_back(std::move(w));
      }
    }
    // The hull must absorb a positive vector for its gauge to be a norm on
    // the cone; seed any uncovered coordinate and keep closing.
    Eigen::VectorXd cover = Eigen::VectorXd::Zero(n);
    for (const auto& v : vs) cover = cover.cwiseMax(v);
    bool added = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (cover(i) > 0) continue;
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e(i) = 1e-6;
      vs.push_back(e);
      added = true;
    }
    if (!added) return true;
  }
}

}  // namespace

Bracket gripenberg_bracket(const MatrixSet& s, double delta, const GripenbergOptions& opt) {
  if (!(delta > 0)) throw DomainError("gripenberg_bracket requires delta > 0");
  if (s.size() == 1) {
    Bracket r = spectral_radius(s[0], opt.joint.spectral);
    r.method = "singleton";
    return r;
  }
  const auto mats = raw(s);
  if (std::all_of(mats.begin(), mats.end(), [](const Eigen::MatrixXd& m) { return m.maxCoeff() == 0.0; }))
    return exact(0.0, "zero_set");

  bool flagged = false;
  // Lower-bound enumeration depth shrinks with the alphabet so it stays cheap.
  int lb_depth = 1;
  while (lb_depth < opt.lb_depth && word_count(mats.size(), lb_depth + 1, 4096) <= 4096 / static_cast<std::size_t>(lb_depth + 1)) ++lb_depth;
  const BestWord best = best_necklace(mats, lb_depth, opt.joint.spectral);
  double lb = best.lb;
  double ub = joint_radius_ub(s, opt.ub_depth, opt.space, opt.joint);
  std::string method = "gripenberg";
  auto result = [&] { return Bracket{std::min(lb, ub), ub, method, flagged || ub - lb > delta}; };
  if (ub - lb <= delta) return result();

  if (lb > 0) {
    for (double eps : {0.5 * delta / lb, 1e-6, 1e-3}) {
      eps = std::max(eps, 1e-12);
      const double candidate = lb * (1 + eps);
      if (candidate >= ub) break;
      if (invariant_cone(mats, best.word, candidate, opt.cone_vectors)) {
        ub = candidate;
        method = "gripenberg+cone";
        break;
      }
    }
    if (ub - lb <= delta) return result();
  }

  SpectralOptions quick = opt.joint.spectral;
  quick.max_squarings = std::min(quick.max_squarings, 30);
  auto l1 = [](const Eigen::MatrixXd& m) { return m.colwise().sum().maxCoeff(); };

  // A surviving node keeps its product and the smallest ||prefix||^(1/len)
  // seen along its path; the largest such value over a level bounds the JSR.
  struct Node {
    Eigen::MatrixXd p;
    double min_root;
  };
  std::vector<Node> level;
  double beta = 0.0;
  for (const auto& a : mats) {
    const double r = l1(a);
    if (r > lb + delta) {
      level.push_back({a, r});
      beta = std::max(beta, r);
    }
  }
  ub = std::min(ub, std::max(lb + delta, beta));
  std::size_t nodes = mats.size();
  for (int depth = 2; depth <= opt.max_depth && !level.empty() && ub - lb > delta; ++depth) {
    if (nodes + level.size() * mats.size() > opt.max_nodes) {
      flagged = true;
      break;
    }
    std::vector<Node> next;
    for (const auto& node : level) {
      for (const auto& a : mats) {
        Node child{node.p * a, 0.0};
        ++nodes;
        const double r = root(l1(child.p), depth);
        lb = std::max(lb, root(spectral_radius(FiniteMatrix(child.p), quick).lo, depth));
        child.min_root = std::min(node.min_root, r);
        if (r > lb + delta) next.push_back(std::move(child));
      }
    }
    // Pruning thresholds may have risen during the sweep; re-filter.
    next.erase(std::remove_if(next.begin(), next.end(), [&](const Node& n) { return n.min_root <= lb + delta; }),
               next.end());
    beta = 0.0;
    for (const auto& n : next) beta = std::max(beta, n.min_root);
    ub = std::min(ub, std::max(lb + delta, beta));
    level = std::move(next);
  }
  if (level.empty()) ub = std::min(ub, lb + delta);
  return result();
}

Bracket set_radius(const MatrixSet& s, RadiusKind kind, double delta, const GripenbergOptions& opt) {
  if (kind == RadiusKind::gen_rho_ess || kind == RadiusKind::joint_rho_ess)
    throw DomainError("essential set radii need operator families");
  // rho(S) <= rho-hat(S); both share the same certified enclosure.
  return gripenberg_bracket(s, delta, opt);
}

namespace {

template <class Visit>
void for_each_family_word(const FamilySet& s, int m, Visit visit) {
  for_each_word(s.elements(), m, [](const OperatorFamily& a, const OperatorFamily& b) { return matrix_product(a, b); },
                [&](const std::vector<int>& w, const OperatorFamily& p) { visit(w, p); });
}

void check_family_budget(const FamilySet& s, const EssSetOptions& opt) {
  if (opt.m_max < 1) throw DomainError("m_max must be at least 1");
  std::size_t total = 0;
  for (int m = 1; m <= opt.m_max; ++m) total += word_count(s.size(), m, opt.max_words);
  if (total > opt.max_words) throw BudgetExceeded("essential set radius: too many words");
}

}  // namespace

double ess_gen_radius_ub(const FamilySet& s, const EssSetOptions& opt) {
  check_family_budget(s, opt);
  double best = 0.0;
  for (int m = 1; m <= opt.m_max; ++m) {
    double level = 0.0;
    for_each_family_word(s, m, [&](const std::vector<int>& w, const OperatorFamily& p) {
      if (is_necklace(w)) level = std::max(level, essential_spectral_radius(p, opt.ess).hi);
    });
    best = std::max(best, root(level, m));
  }
  return best;
}

double ess_joint_radius_ub(const FamilySet& s, const EssSetOptions& opt) {
  check_family_budget(s, opt);
  double ub = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= opt.m_max; ++m) {
    double level = 0.0;
    for_each_family_word(s, m, [&](const std::vector<int>&, const OperatorFamily& p) {
      level = std::max(level, hausdorff_mnc(p, opt.ess.gamma).hi);
    });
    ub = std::min(ub, root(level, m));
  }
  return ub;
}

Bracket ess_set_radius(const FamilySet& s, const EssSetOptions& opt) {
  if (s.size() == 1) {
    Bracket r = essential_spectral_radius(s[0], opt.ess);
    r.method = "singleton:" + r.method;
    return r;
  }
  check_family_budget(s, opt);
  double lo = 0.0;
  double ub = std::numeric_limits<double>::infinity();
  bool flagged = false;
  for (int m = 1; m <= opt.m_max; ++m) {
    double level_hi = 0.0;
    for_each_family_word(s, m, [&](const std::vector<int>& w, const OperatorFamily& p) {
      const Bracket g = hausdorff_mnc(p, opt.ess.gamma);
      level_hi = std::max(level_hi, g.hi);
      flagged = flagged || g.flagged;
      if (is_necklace(w)) lo = std::max(lo, root(essential_spectral_radius(p, opt.ess).lo, m));
    });
    ub = std::min(ub, root(level_hi, m));
  }
  return Bracket{std::min(lo, ub), ub, "observed_lo+gamma_joint_ub", flagged};
}

}  // namespace essrad
