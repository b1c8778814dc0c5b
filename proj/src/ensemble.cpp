#include "essrad/ensemble.hpp"

#include <algorithm>
#include <variant>

#include "essrad/errors.hpp"

namespace essrad {

const char* to_string(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::dense_uniform: return "dense_uniform";
    case EnsembleKind::sparse_bernoulli: return "sparse_bernoulli";
    case EnsembleKind::shift_family: return "shift_family";
    case EnsembleKind::diagonal_family: return "diagonal_family";
    case EnsembleKind::shift_plus_rank: return "shift_plus_rank";
    case EnsembleKind::family_mix: return "family_mix";
  }
  return "dense_uniform";
}

EnsembleKind ensemble_from_string(const std::string& s) {
  for (auto k : {EnsembleKind::dense_uniform, EnsembleKind::sparse_bernoulli, EnsembleKind::shift_family,
                 EnsembleKind::diagonal_family, EnsembleKind::shift_plus_rank, EnsembleKind::family_mix})
    if (s == to_string(k)) return k;
  throw DomainError("unknown ensemble \"" + s + "\"");
}

Level ensemble_level(EnsembleKind k) {
  return k == EnsembleKind::dense_uniform || k == EnsembleKind::sparse_bernoulli ? Level::finite : Level::essential;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, const std::string& stream, std::uint64_t trial)
    : engine_(splitmix(splitmix(seed) ^ splitmix(fnv1a(stream)) ^ splitmix(trial * 0x2545f4914f6cdd1dULL + 1))) {}

double TrialRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::int64_t TrialRng::integer(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw DomainError("TrialRng::integer: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the draw unbiased and independent of the library's
  // distribution implementation.
  const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} / span) * span;
  std::uint64_t x = engine_();
  if (span != 0)
    while (x >= limit) x = engine_();
  return lo + static_cast<std::int64_t>(span == 0 ? x : x % span);
}

FiniteMatrix draw_matrix(TrialRng& rng, const EnsembleSpec& ens, std::size_t n) {
  std::vector<double> e(n * n);
  if (ens.kind == EnsembleKind::sparse_bernoulli) {
    for (auto& x : e) {
      const double keep = rng.uniform();
      const double v = rng.uniform();
      x = keep < ens.density ? v : 0.0;
    }
  } else if (ens.kind == EnsembleKind::dense_uniform) {
    for (auto& x : e) x = rng.uniform();
  } else {
    throw DomainError(std::string("ensemble ") + to_string(ens.kind) + " does not produce finite matrices");
  }
  return FiniteMatrix(n, n, std::move(e));
}

OperatorFamily draw_family(TrialRng& rng, const EnsembleSpec& ens, EnsembleKind kind) {
  // w(i) = c + a / i written as (a + c i) / i.
  const double c = rng.uniform(0.5, 2.0);
  const double a = rng.uniform(-0.4, 1.0);
  const auto w = WeightSequence::rational({a, c}, {0.0, 1.0});
  switch (kind) {
    case EnsembleKind::shift_family: return OperatorFamily::shift(w, 1);
    case EnsembleKind::diagonal_family: return OperatorFamily::diagonal(w);
    case EnsembleKind::shift_plus_rank: {
      std::vector<double> e(ens.corner * ens.corner);
      for (auto& x : e) x = rng.uniform();
      return matrix_sum(OperatorFamily::shift(w, 1), OperatorFamily::finite_rank(FiniteMatrix(ens.corner, ens.corner, e)));
    }
    default: throw DomainError(std::string("ensemble ") + to_string(kind) + " is not a single family kind");
  }
}

ChainInput sample_input(const ChainSpec& spec, const EnsembleSpec& ens, std::uint64_t trial) {
  if (ensemble_level(ens.kind) != spec.level)
    throw DomainError(spec.id + " is a " + to_string(spec.level) + "-level chain; ensemble " + to_string(ens.kind) +
                      " produces " + to_string(ensemble_level(ens.kind)) + "-level operators");
  TrialRng rng(ens.seed, spec.id, trial);
  ChainInput in;
  std::function<double()> u = [&rng] { return rng.uniform(); };
  in.params = spec.draw ? spec.draw(trial, u) : ChainParams{};
  const int count = spec.arity.count(in.params);
  const int set_size = in.params.m > spec.arity.set_max_m ? 1 : spec.arity.set_size;
  if (spec.level == Level::finite) {
    const auto n = static_cast<std::size_t>(rng.integer(static_cast<std::int64_t>(ens.min_size),
                                                        static_cast<std::int64_t>(ens.max_size)));
    for (int k = 0; k < count; ++k) {
      std::vector<FiniteMatrix> el;
      for (int e = 0; e < set_size; ++e) el.push_back(draw_matrix(rng, ens, n));
      in.operands.emplace_back(MatrixSet(std::move(el)));
    }
  } else {
    EnsembleKind kind = ens.kind;
    if (kind == EnsembleKind::family_mix) {
      const EnsembleKind cycle[] = {EnsembleKind::shift_family, EnsembleKind::diagonal_family,
                                    EnsembleKind::shift_plus_rank};
      kind = cycle[trial % 3];
    }
    for (int k = 0; k < count; ++k) {
      std::vector<OperatorFamily> el;
      for (int e = 0; e < set_size; ++e) el.push_back(draw_family(rng, ens, kind));
      in.operands.emplace_back(FamilySet(std::move(el)));
    }
  }
  return in;
}

}  // namespace essrad
