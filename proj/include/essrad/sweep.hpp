#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "essrad/chain.hpp"
#include "essrad/ensemble.hpp"
#include "essrad/json_io.hpp"

namespace essrad {

/// Ensemble used when a sweep names none: dense uniform matrices at the
/// finite level, the mixed family ensemble at the essential level.
EnsembleSpec default_ensemble(Level level, std::uint64_t seed);

struct TrialRecord {
  std::uint64_t trial = 0;
  ChainReport report;
  /// Kept only when the sweep is asked to retain inputs.
  std::optional<ChainInput> input;
};

struct SweepSummary {
  std::string chain_id;
  std::uint64_t trials = 0;
  std::uint64_t pass = 0, fail = 0, inconclusive = 0;
  double min_slack = 0.0;
  std::uint64_t argmin_trial = 0;
  std::string argmin_digest;
};

struct SweepResult {
  std::vector<TrialRecord> records;
  SweepSummary summary;
};

/// Trials run on up to `threads` workers; records are merged in trial order,
/// so the result does not depend on the thread count.
SweepResult run_sweep(const ChainSpec& spec, const EnsembleSpec& ens, std::uint64_t trials, const EvalConfig& cfg = {},
                      bool keep_inputs = false, unsigned threads = 1);

namespace io {
json to_json(const SweepSummary& s);
/// One row per term: chain_id, trial, term_index, term_label, lo, hi, slack,
/// verdict. The slack and verdict are those of the link to the next term
/// (empty on the last term of a group).
std::string csv_header();
std::string csv_rows(const std::string& chain_id, std::uint64_t trial, const ChainReport& r);
}  // namespace io

}  // namespace essrad
