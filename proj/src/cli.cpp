#include "essrad/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <variant>

#include "essrad/ensemble.hpp"
#include "essrad/errors.hpp"
#include "essrad/essential.hpp"
#include "essrad/joint.hpp"
#include "essrad/registry.hpp"
#include "essrad/spectral.hpp"
#include "essrad/sweep.hpp"

namespace essrad {

using io::json;

std::optional<std::string> process_env(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (!v) return std::nullopt;
  return std::string(v);
}

namespace {

long parse_positive(const std::string& name, const std::string& value, long max) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || v < 1 || v > max)
    throw DomainError(name + "=\"" + value + "\": expected an integer in [1, " + std::to_string(max) + "]");
  return v;
}

}  // namespace

EvalConfig config_from_env(const EnvLookup& env, json* overrides) {
  EvalConfig cfg;
  json seen = json::object();
  auto get = [&](const std::string& name, long max) -> std::optional<long> {
    const auto v = env(name);
    if (!v) return std::nullopt;
    seen[name] = *v;
    return parse_positive(name, *v, max);
  };
  if (auto k = get("ESSRAD_GAMMA_KMAX", 60)) {
    cfg.ess.gamma.k_max = static_cast<int>(*k);
    cfg.ess_set.ess.gamma.k_max = static_cast<int>(*k);
  }
  if (auto j = get("ESSRAD_JMAX", 64)) {
    cfg.ess.j_max = static_cast<int>(*j);
    cfg.ess_set.ess.j_max = static_cast<int>(*j);
  }
  if (auto d = get("ESSRAD_SET_DEPTH", 8)) cfg.ess_set.m_max = static_cast<int>(*d);
  if (auto b = get("ESSRAD_BUDGET", 100000000)) {
    cfg.jsr.max_nodes = static_cast<std::size_t>(*b);
    cfg.ess_set.max_words = static_cast<std::size_t>(*b);
  }
  if (overrides) *overrides = seen;
  return cfg;
}

json config_echo(const EvalConfig& cfg) {
  return json{{"tolerances",
               {{"finite", cfg.finite_tol}, {"essential", cfg.essential_tol}, {"jsr_delta", cfg.jsr_delta}}},
              {"budgets",
               {{"gamma_k_max", cfg.ess.gamma.k_max},
                {"ess_j_max", cfg.ess.j_max},
                {"ess_set_depth", cfg.ess_set.m_max},
                {"ess_set_max_words", cfg.ess_set.max_words},
                {"jsr_lb_depth", cfg.jsr.lb_depth},
                {"jsr_ub_depth", cfg.jsr.ub_depth},
                {"jsr_max_nodes", cfg.jsr.max_nodes},
                {"jsr_cone_vectors", cfg.jsr.cone_vectors},
                {"spectral_max_squarings", cfg.spectral.max_squarings}}}};
}

namespace {

json tool_json() { return json{{"name", "essrad"}, {"version", toolkit_version}}; }

json bracket_json(const Bracket& b) {
  return json{{"lo", b.lo}, {"hi", b.hi}, {"width", b.width()}, {"method", b.method}, {"flagged", b.flagged}};
}

json ensemble_json(const EnsembleSpec& e) {
  json j{{"kind", to_string(e.kind)}, {"seed", e.seed}};
  if (ensemble_level(e.kind) == Level::finite) {
    j["min_size"] = e.min_size;
    j["max_size"] = e.max_size;
    if (e.kind == EnsembleKind::sparse_bernoulli) j["density"] = e.density;
  } else {
    j["corner"] = e.corner;
  }
  return j;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::pass: return exit_pass;
    case Verdict::fail: return exit_fail;
    case Verdict::inconclusive: return exit_inconclusive;
  }
  return exit_inconclusive;
}

/// Writes `text` to `path`, or to `out` when the path is empty.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DomainError("cannot open output file " + path);
  f << text;
  if (!f.flush()) throw DomainError("cannot write output file " + path);
}

void check_writable(const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary | std::ios::app);
  if (!f) throw DomainError("cannot open output file " + path);
}

struct CheckArgs {
  std::vector<std::string> ids;
  std::string input;
  bool random = false;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::string ensemble;
  std::string output;
};

struct SweepArgs {
  std::string registry = "all";
  std::vector<std::string> ids;
  std::uint64_t trials = 200;
  std::uint64_t seed = 0;
  std::string ensemble;
  std::string format = "json";
  std::string output;
  bool dump_inputs = false;
  unsigned threads = 1;
  double max_inconclusive = 0.0;
};

struct EstimateArgs {
  std::string quantity;
  std::string input;
  double delta = 1e-9;
  std::string space = "l2";
  std::string output;
};

using Catalog = std::vector<ChainSpec>;

std::vector<const ChainSpec*> resolve_ids(const std::vector<std::string>& ids, const Catalog& chains) {
  std::vector<const ChainSpec*> out;
  for (const auto& id : ids) {
    if (id == "all") {
      for (const auto& s : chains) out.push_back(&s);
      continue;
    }
    const auto it = std::find_if(chains.begin(), chains.end(), [&](const ChainSpec& s) { return s.id == id; });
    if (it == chains.end()) throw DomainError("unknown chain id \"" + id + "\"");
    out.push_back(&*it);
  }
  return out;
}

EnsembleSpec pick_ensemble(const std::string& name, Level level, std::uint64_t seed) {
  EnsembleSpec e = default_ensemble(level, seed);
  if (!name.empty()) e.kind = ensemble_from_string(name);
  return e;
}

int cmd_check(const CheckArgs& a, const Catalog& chains, const EvalConfig& cfg, const json& env_overrides,
              std::ostream& out) {
  if (a.random == !a.input.empty()) throw DomainError("check needs exactly one of --input or --random");
  const auto specs = resolve_ids(a.ids, chains);
  check_writable(a.output);
  std::optional<ChainInput> given;
  if (!a.input.empty()) given = io::input_from_json(io::load_file(a.input));

  json reports = json::array();
  Verdict overall = Verdict::pass;
  json ensembles = json::array();
  for (const auto* spec : specs) {
    ChainInput in;
    if (given) {
      in = *given;
    } else {
      const auto ens = pick_ensemble(a.ensemble, spec->level, a.seed);
      ensembles.push_back(ensemble_json(ens));
      in = sample_input(*spec, ens, a.trial);
    }
    const auto rep = evaluate_chain(*spec, in, cfg);
    overall = combine(overall, rep.verdict);
    json r = io::to_json(rep);
    if (!given) r["input"] = io::to_json(in);
    reports.push_back(std::move(r));
  }
  json config{{"command", "check"}, {"ids", a.ids}, {"env_overrides", env_overrides}};
  config.update(config_echo(cfg));
  if (given) {
    config["input"] = a.input;
  } else {
    config["random"] = {{"seed", a.seed}, {"trial", a.trial}, {"ensembles", ensembles}};
  }
  json doc{{"tool", tool_json()}, {"config", config}, {"reports", reports}, {"verdict", to_string(overall)}};
  emit(io::dump(doc, 2) + "\n", a.output, out);
  return verdict_exit(overall);
}

int cmd_sweep(const SweepArgs& a, const Catalog& chains, const EvalConfig& cfg, const json& env_overrides,
              std::ostream& out, std::ostream& err) {
  if (a.trials < 1) throw DomainError("--trials must be at least 1");
  if (!(a.max_inconclusive >= 0 && a.max_inconclusive <= 1))
    throw DomainError("--max-inconclusive must lie in [0, 1]");
  std::vector<const ChainSpec*> specs;
  if (!a.ids.empty()) {
    specs = resolve_ids(a.ids, chains);
  } else {
    const bool all = a.registry == "all";
    const Level level = all ? Level::finite : level_from_string(a.registry);
    for (const auto& s : chains)
      if (all || s.level == level) specs.push_back(&s);
  }
  std::optional<EnsembleKind> forced;
  if (!a.ensemble.empty()) {
    forced = ensemble_from_string(a.ensemble);
    for (const auto* s : specs)
      if (ensemble_level(*forced) != s->level)
        throw DomainError("ensemble " + a.ensemble + " cannot drive " + to_string(s->level) + "-level chain " + s->id);
  }
  check_writable(a.output);

  json ensembles = json::object();
  json chain_docs = json::array();
  std::string csv;
  std::uint64_t pass = 0, fail = 0, inconclusive = 0, total = 0;
  for (const auto* spec : specs) {
    const auto ens = pick_ensemble(a.ensemble, spec->level, a.seed);
    ensembles[to_string(spec->level)] = ensemble_json(ens);
    const auto res = run_sweep(*spec, ens, a.trials, cfg, a.dump_inputs, a.threads);
    pass += res.summary.pass;
    fail += res.summary.fail;
    inconclusive += res.summary.inconclusive;
    total += res.summary.trials;
    if (a.format == "csv") {
      for (const auto& rec : res.records) csv += io::csv_rows(spec->id, rec.trial, rec.report);
    } else {
      json trials = json::array();
      for (const auto& rec : res.records) {
        json t{{"trial", rec.trial}, {"report", io::to_json(rec.report)}};
        if (rec.input) t["input"] = io::to_json(*rec.input);
        trials.push_back(std::move(t));
      }
      chain_docs.push_back(json{{"chain_id", spec->id},
                            {"level", to_string(spec->level)},
                            {"summary", io::to_json(res.summary)},
                            {"trials", std::move(trials)}});
    }
    if (a.format == "csv") chain_docs.push_back(io::to_json(res.summary));
    err << spec->id << ": " << res.summary.pass << " pass, " << res.summary.fail << " fail, "
        << res.summary.inconclusive << " inconclusive\n";
  }
  const double frac = total ? static_cast<double>(inconclusive) / static_cast<double>(total) : 0.0;
  const Verdict overall = fail ? Verdict::fail : frac > a.max_inconclusive ? Verdict::inconclusive : Verdict::pass;
  json totals{{"chain_docs", specs.size()},         {"trials", total}, {"pass", pass}, {"fail", fail},
              {"inconclusive", inconclusive}, {"inconclusive_fraction", frac}};

  json config{{"command", "sweep"},
              {"registry", a.ids.empty() ? a.registry : "ids"},
              {"ids", a.ids},
              {"trials", a.trials},
              {"seed", a.seed},
              {"ensembles", ensembles},
              {"dump_inputs", a.dump_inputs},
              {"max_inconclusive", a.max_inconclusive},
              {"env_overrides", env_overrides}};
  config.update(config_echo(cfg));

  std::string text;
  if (a.format == "csv") {
    text = "# essrad " + std::string(toolkit_version) + "\n# config " + io::dump(config) + "\n" + io::csv_header() + csv;
    for (const auto& s : chain_docs) text += "# summary " + io::dump(s) + "\n";
    text += "# totals " + io::dump(totals) + "\n";
  } else {
    json doc{{"tool", tool_json()},
             {"config", config},
             {"chains", chain_docs},
             {"totals", totals},
             {"verdict", to_string(overall)}};
    text = io::dump(doc, 2) + "\n";
  }
  emit(text, a.output, out);
  if (!a.output.empty()) out << io::dump(json{{"totals", totals}, {"verdict", to_string(overall)}}) << "\n";
  return verdict_exit(overall);
}

OperatorSet load_operand(const std::string& path) {
  json j = io::load_file(path);
  if (j.is_object() && j.contains("inputs")) {
    const auto in = io::input_from_json(j);
    if (in.operands.size() != 1) throw SchemaError("/inputs: estimate takes exactly one operator or set");
    return in.operands.front();
  }
  return io::set_from_json(j, "");
}

int cmd_estimate(const EstimateArgs& a, const EvalConfig& cfg, const json& env_overrides, std::ostream& out,
                 std::ostream& err) {
  if (!(a.delta > 0)) throw DomainError("--delta must be positive");
  const SpaceTag space = space_from_string(a.space);
  check_writable(a.output);
  const OperatorSet op = load_operand(a.input);
  const auto* ms = std::get_if<MatrixSet>(&op);
  const auto* fs = std::get_if<FamilySet>(&op);
  json diag = json::object();
  json warnings = json::array();
  Bracket b;
  const std::string& q = a.quantity;
  auto need_matrices = [&] {
    if (!ms) throw DomainError(q + " needs finite matrices; use gamma or ess for infinite families");
  };
  auto need_families = [&] {
    if (!fs) throw DomainError(q + " needs infinite-matrix families");
  };
  if (q == "rho") {
    need_matrices();
    if (ms->size() == 1) {
      b = spectral_radius((*ms)[0], cfg.spectral);
    } else {
      b = set_radius(*ms, RadiusKind::gen_rho, a.delta, cfg.jsr);
    }
  } else if (q == "norm") {
    need_matrices();
    b = Bracket{0, 0, "", false};
    for (const auto& m : *ms) {
      const auto x = operator_norm(m, space, cfg.spectral);
      b.lo = std::max(b.lo, x.lo);
      b.hi = std::max(b.hi, x.hi);
      b.method = x.method;
      b.flagged = b.flagged || x.flagged;
    }
    diag["space"] = to_string(space);
  } else if (q == "gamma") {
    if (ms) {
      b = exact(0.0, "finite_rank");
    } else {
      b = Bracket{0, 0, "", false};
      for (const auto& f : *fs) {
        const auto x = hausdorff_mnc(f, cfg.ess.gamma);
        b.lo = std::max(b.lo, x.lo);
        b.hi = std::max(b.hi, x.hi);
        b.method = x.method;
        b.flagged = b.flagged || x.flagged;
      }
    }
  } else if (q == "ess") {
    need_families();
    if (fs->size() == 1) {
      EssentialDiagnostics d;
      b = essential_spectral_radius((*fs)[0], cfg.ess, &d);
      diag["power_bounds"] = d.power_bounds;
      if (!oracle_ess_radius((*fs)[0])) warnings.push_back("no exact oracle for this structure; lower end is the Toeplitz floor");
    } else {
      b = ess_set_radius(*fs, cfg.ess_set);
      warnings.push_back("set radius: lower end is the largest observed element radius");
    }
  } else if (q == "jsr") {
    need_matrices();
    b = gripenberg_bracket(*ms, a.delta, cfg.jsr);
  } else {
    throw DomainError("unknown quantity \"" + q + "\" (expected rho, norm, gamma, ess or jsr)");
  }
  for (const auto& w : warnings) err << "warning: " << w.get<std::string>() << "\n";
  json config{{"command", "estimate"}, {"quantity", q},          {"input", a.input},
              {"delta", a.delta},      {"space", to_string(space)}, {"env_overrides", env_overrides}};
  config.update(config_echo(cfg));
  json doc{{"tool", tool_json()},
           {"config", config},
           {"input_digest", io::digest(io::to_json(op))},
           {"result", bracket_json(b)},
           {"diagnostics", diag},
           {"warnings", warnings}};
  emit(io::dump(doc, 2) + "\n", a.output, out);
  return exit_pass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env,
            const std::vector<ChainSpec>* catalog) {
  const Catalog& chains = catalog ? *catalog : registry();
  CLI::App app{"Certified spectral-radius brackets and inequality-chain checks for nonnegative matrices", "essrad"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("essrad ") + toolkit_version);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Evaluate named chains on one input");
  check->add_option("--id", ca.ids, "Chain id (repeatable, or \"all\")")->required();
  check->add_option("--input", ca.input, "JSON file with {\"inputs\": [...], \"params\": {...}}");
  check->add_flag("--random", ca.random, "Draw the input from the default ensemble");
  check->add_option("--seed", ca.seed, "Seed for --random");
  check->add_option("--trial", ca.trial, "Trial index for --random");
  check->add_option("--ensemble", ca.ensemble, "Ensemble for --random");
  check->add_option("--output", ca.output, "Write the report here instead of stdout");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Run chains over seeded random ensembles");
  sweep->add_option("--registry", sa.registry, "finite, essential or all")
      ->check(CLI::IsMember({"finite", "essential", "all"}));
  sweep->add_option("--id", sa.ids, "Restrict to these chain ids (repeatable)");
  sweep->add_option("--trials", sa.trials, "Trials per chain");
  sweep->add_option("--seed", sa.seed, "Base seed");
  sweep->add_option("--ensemble", sa.ensemble, "Ensemble kind (default per level)");
  sweep->add_option("--format", sa.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--output", sa.output, "Report file (default stdout)");
  sweep->add_flag("--dump-inputs", sa.dump_inputs, "Store every sampled input in the JSON report");
  sweep->add_option("--threads", sa.threads, "Worker threads (output does not depend on it)");
  sweep->add_option("--max-inconclusive", sa.max_inconclusive,
                    "Largest inconclusive fraction that still exits 0");

  EstimateArgs ea;
  auto* estimate = app.add_subcommand("estimate", "Bracket one quantity of an operator or set");
  estimate->add_option("quantity", ea.quantity, "rho, norm, gamma, ess or jsr")
      ->required()
      ->check(CLI::IsMember({"rho", "norm", "gamma", "ess", "jsr"}));
  estimate->add_option("--input", ea.input, "JSON operator, list of operators, or {\"inputs\": [...]}")->required();
  estimate->add_option("--delta", ea.delta, "Target width for set radii");
  estimate->add_option("--space", ea.space, "l1, l2 or linf (norm)");
  estimate->add_option("--output", ea.output, "Write the result here instead of stdout");

  std::string cat_output;
  auto* catalog_cmd = app.add_subcommand("catalog", "Print the chain catalog as JSON");
  catalog_cmd->add_option("--output", cat_output, "Write here instead of stdout");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_input_error;
  }

  try {
    json overrides;
    const EvalConfig cfg = config_from_env(env, &overrides);
    if (*check) return cmd_check(ca, chains, cfg, overrides, out);
    if (*sweep) return cmd_sweep(sa, chains, cfg, overrides, out, err);
    if (*estimate) return cmd_estimate(ea, cfg, overrides, out, err);
    emit(io::dump(io::catalog_json(), 2) + "\n", cat_output, out);
    return exit_pass;
  } catch (const HypothesisViolation& e) {
    err << "hypothesis violated: " << e.what() << "\n";
  } catch (const SchemaError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const ShapeError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
  } catch (const ClosureOverflow& e) {
    err << "closure overflow: " << e.what() << "\n";
  }
  return exit_input_error;
}

}  // namespace essrad
