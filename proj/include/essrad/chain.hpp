#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "essrad/bracket.hpp"
#include "essrad/essential.hpp"
#include "essrad/joint.hpp"
#include "essrad/json_io.hpp"
#include "essrad/operator_set.hpp"

namespace essrad {

enum class Level { finite, essential };
enum class Link { le, eq };
enum class Verdict { pass, fail, inconclusive };

const char* to_string(Level l);
const char* to_string(Link l);
const char* to_string(Verdict v);
Level level_from_string(const std::string& s);

/// Inputs that violate a chain's stated side conditions. Never a fail.
class HypothesisViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scalar and combinatorial parameters shared by the catalog. Each chain
/// reads only the fields named in its arity.
struct ChainParams {
  int m = 2;
  int n = 2;
  int k = 2;
  double alpha = 1.0;
  double beta = 0.5;
  double t = 2.0;
  /// Per-factor exponents alpha_1..alpha_m (chains with unequal weights).
  std::vector<double> alphas;
  /// Permutations of 1..m.
  std::vector<int> tau;
  std::vector<int> nu;
  SpaceTag space = SpaceTag::l2;
};

/// Operands of a chain. Every operand is a set; a single operator is a
/// singleton set.
struct ChainInput {
  std::vector<OperatorSet> operands;
  ChainParams params;
};

struct Arity {
  /// Human-readable operand signature, e.g. "2 matrices" or "m family sets".
  std::string operands;
  /// Operand count as a function of the parameters.
  std::function<int(const ChainParams&)> count;
  /// Largest set size the sampler draws (1 = single operators).
  int set_size = 1;
  /// Sets are drawn only while m <= set_max_m; above it operands are
  /// single operators so derived sets stay within the enumeration caps.
  int set_max_m = 3;
  /// Parameters the chain reads.
  std::vector<std::string> params;
};

struct EvalConfig {
  double finite_tol = 1e-9;
  double essential_tol = 1e-6;
  /// Target width for finite-set joint radius brackets.
  double jsr_delta = 1e-9;
  GripenbergOptions jsr{};
  EssentialOptions ess{};
  EssSetOptions ess_set{};
  SpectralOptions spectral{};

  double tol(Level l) const { return l == Level::finite ? finite_tol : essential_tol; }
};

/// A lazily evaluated term of a chain.
struct TermDef {
  std::string label;
  std::function<Bracket()> eval;
};

/// One ordered sequence term_1 R_1 term_2 R_2 ... with R_i in {<=, =}.
struct GroupDef {
  std::string name;
  std::vector<TermDef> terms;
  /// links[i] relates terms[i] and terms[i+1]; empty means all <=.
  std::vector<Link> links;
};

struct ChainSpec {
  std::string id;
  Level level = Level::finite;
  std::string title;
  /// Short neutral descriptors of the statements the chain encodes.
  std::vector<std::string> anchors;
  std::string hypothesis_text;
  Arity arity;
  /// Throws HypothesisViolation when the parameters or operands do not meet
  /// the side conditions. Operand counts and levels are checked separately.
  std::function<void(const ChainInput&)> hypothesis;
  std::function<std::vector<GroupDef>(const ChainInput&, const EvalConfig&)> build;
  /// Parameters for sweep trial `trial`; `u` is a stream of uniforms in [0,1).
  std::function<ChainParams(std::uint64_t trial, const std::function<double()>& u)> draw;
};

struct TermValue {
  std::string label;
  Bracket value;
  /// Nonempty when the estimator failed (budget, overflow); the bracket is
  /// then [0, inf].
  std::string error;
};

struct GroupReport {
  std::string name;
  std::vector<TermValue> terms;
  std::vector<Link> links;
  /// slacks[i] = terms[i+1].hi * (1 + tol) - terms[i].lo (for = links the
  /// smaller of the two directions).
  std::vector<double> slacks;
  std::vector<Verdict> link_verdicts;
  Verdict verdict = Verdict::pass;
};

struct ChainReport {
  std::string chain_id;
  Level level = Level::finite;
  std::string input_digest;
  double tol = 0.0;
  std::vector<GroupReport> groups;
  Verdict verdict = Verdict::pass;
  /// Set when building the terms ran out of budget; the verdict is then
  /// inconclusive and `groups` is empty.
  std::string error;
  double min_slack() const;
};

/// Verdict for one link given the two brackets.
Verdict link_verdict(const Bracket& a, const Bracket& b, Link link, double tol);
double link_slack(const Bracket& a, const Bracket& b, Link link, double tol);

/// Checks arity, level and hypothesis; throws HypothesisViolation.
void validate_input(const ChainSpec& spec, const ChainInput& in);

/// Evaluates every group. Estimator failures make the affected links
/// inconclusive; they never produce a fail.
ChainReport evaluate_chain(const ChainSpec& spec, const ChainInput& in, const EvalConfig& cfg = {});

/// Worst of two verdicts (fail > inconclusive > pass).
Verdict combine(Verdict a, Verdict b);

}  // namespace essrad

namespace essrad::io {

json to_json(const ChainParams& p);
/// Missing fields keep their defaults; unknown fields are rejected.
ChainParams params_from_json(const json& j, const std::string& path = "/params");
json to_json(const ChainInput& in);
/// {"inputs": [set, ...], "params": {...}}
ChainInput input_from_json(const json& j);
json to_json(const ChainReport& r);

}  // namespace essrad::io
