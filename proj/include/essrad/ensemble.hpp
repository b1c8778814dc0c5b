#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "essrad/chain.hpp"
#include "essrad/finite_matrix.hpp"
#include "essrad/operator_family.hpp"

namespace essrad {

enum class EnsembleKind {
  dense_uniform,
  sparse_bernoulli,
  shift_family,
  diagonal_family,
  shift_plus_rank,
  /// Cycles shift_family, diagonal_family, shift_plus_rank by trial index.
  family_mix,
};

const char* to_string(EnsembleKind k);
EnsembleKind ensemble_from_string(const std::string& s);
/// Level of the operators an ensemble produces.
Level ensemble_level(EnsembleKind k);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::dense_uniform;
  /// Matrix dimension range for finite ensembles.
  std::size_t min_size = 4;
  std::size_t max_size = 6;
  /// Probability that an entry is nonzero (sparse_bernoulli).
  double density = 0.3;
  /// Side of the finite-rank corner block (shift_plus_rank).
  std::size_t corner = 3;
  std::uint64_t seed = 0;
};

/// Random stream of one trial; seeded from (seed, stream name, trial) so
/// trials are independent and reproducible in any order.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, const std::string& stream, std::uint64_t trial);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

FiniteMatrix draw_matrix(TrialRng& rng, const EnsembleSpec& ens, std::size_t n);
/// Draws one family of the given non-mixed family kind.
OperatorFamily draw_family(TrialRng& rng, const EnsembleSpec& ens, EnsembleKind kind);

/// Input for one sweep trial: parameters from the chain's sampler, then
/// operands with the chain's set size (singletons once m exceeds
/// the chain's set_max_m).
ChainInput sample_input(const ChainSpec& spec, const EnsembleSpec& ens, std::uint64_t trial);

}  // namespace essrad
