#include "essrad/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <cstdio>
#include <limits>

namespace essrad {

EnsembleSpec default_ensemble(Level level, std::uint64_t seed) {
  EnsembleSpec e;
  e.kind = level == Level::finite ? EnsembleKind::dense_uniform : EnsembleKind::family_mix;
  e.seed = seed;
  return e;
}

SweepResult run_sweep(const ChainSpec& spec, const EnsembleSpec& ens, std::uint64_t trials, const EvalConfig& cfg,
                      bool keep_inputs, unsigned threads) {
  SweepResult res;
  res.records.resize(trials);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::uint64_t t = next++; t < trials; t = next++) {
      try {
        TrialRecord rec;
        rec.trial = t;
        ChainInput in = sample_input(spec, ens, t);
        rec.report = evaluate_chain(spec, in, cfg);
        if (keep_inputs) rec.input = std::move(in);
        res.records[t] = std::move(rec);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = trials;
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(trials, 64))));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  auto& sum = res.summary;
  sum.chain_id = spec.id;
  sum.trials = trials;
  sum.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& rec : res.records) {
    switch (rec.report.verdict) {
      case Verdict::pass: ++sum.pass; break;
      case Verdict::fail: ++sum.fail; break;
      case Verdict::inconclusive: ++sum.inconclusive; break;
    }
    const double s = rec.report.min_slack();
    if (s < sum.min_slack || sum.argmin_digest.empty()) {
      if (s < sum.min_slack) sum.min_slack = s;
      sum.argmin_trial = rec.trial;
      sum.argmin_digest = rec.report.input_digest;
    }
  }
  return res;
}

namespace io {

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

json to_json(const SweepSummary& s) {
  json slack = std::isfinite(s.min_slack) ? json(s.min_slack) : json(num(s.min_slack));
  return json{{"chain_id", s.chain_id},        {"trials", s.trials},       {"pass", s.pass},
              {"fail", s.fail},                {"inconclusive", s.inconclusive}, {"min_slack", slack},
              {"argmin_trial", s.argmin_trial}, {"argmin_digest", s.argmin_digest}};
}

std::string csv_header() { return "chain_id,trial,term_index,term_label,lo,hi,slack,verdict\n"; }

std::string csv_rows(const std::string& chain_id, std::uint64_t trial, const ChainReport& r) {
  std::string out;
  std::size_t index = 0;
  for (const auto& g : r.groups) {
    for (std::size_t i = 0; i < g.terms.size(); ++i, ++index) {
      const auto& t = g.terms[i];
      const bool link = i < g.links.size();
      out += chain_id + "," + std::to_string(trial) + "," + std::to_string(index) + "," + quoted(g.name + ": " + t.label) +
             "," + num(t.value.lo) + "," + num(t.value.hi) + "," + (link ? num(g.slacks[i]) : "") + "," +
             (link ? to_string(g.link_verdicts[i]) : "") + "\n";
    }
  }
  if (r.groups.empty())
    out += chain_id + "," + std::to_string(trial) + ",0," + quoted(r.error) + ",,,," + to_string(r.verdict) + "\n";
  return out;
}

}  // namespace io

}  // namespace essrad
