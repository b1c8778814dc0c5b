#include "essrad/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

#include "essrad/errors.hpp"

namespace essrad {

const char* to_string(Level l) { return l == Level::finite ? "finite" : "essential"; }
const char* to_string(Link l) { return l == Link::le ? "<=" : "="; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Level level_from_string(const std::string& s) {
  if (s == "finite") return Level::finite;
  if (s == "essential") return Level::essential;
  throw DomainError("unknown level \"" + s + "\" (expected finite or essential)");
}

Verdict combine(Verdict a, Verdict b) {
  auto rank = [](Verdict v) { return v == Verdict::fail ? 2 : v == Verdict::inconclusive ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

double ChainReport::min_slack() const {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& g : groups)
    for (double x : g.slacks) s = std::min(s, x);
  return s;
}

namespace {

bool valid(const Bracket& b) { return std::isfinite(b.lo) && std::isfinite(b.hi); }

// Values this small are treated as equal when deciding pass; they never
// influence a fail.
constexpr double pass_floor = 1e-12;

Verdict le_verdict(const Bracket& a, const Bracket& b, double tol) {
  if (a.lo > b.hi * (1 + tol)) return Verdict::fail;
  if (!valid(a) || !valid(b)) return Verdict::inconclusive;
  if (a.lo <= b.lo * (1 + tol) + pass_floor && a.hi <= b.hi * (1 + tol) + pass_floor) return Verdict::pass;
  return Verdict::inconclusive;
}

}  // namespace

Verdict link_verdict(const Bracket& a, const Bracket& b, Link link, double tol) {
  if (link == Link::le) return le_verdict(a, b, tol);
  if (a.lo > b.hi * (1 + tol) || b.lo > a.hi * (1 + tol)) return Verdict::fail;
  if (!valid(a) || !valid(b)) return Verdict::inconclusive;
  return Verdict::pass;
}

double link_slack(const Bracket& a, const Bracket& b, Link link, double tol) {
  const double fwd = b.hi * (1 + tol) - a.lo;
  if (link == Link::le) return fwd;
  return std::min(fwd, a.hi * (1 + tol) - b.lo);
}

void validate_input(const ChainSpec& spec, const ChainInput& in) {
  const int want = spec.arity.count(in.params);
  if (want < 1) throw HypothesisViolation(spec.id + ": parameters give no operands");
  if (static_cast<int>(in.operands.size()) != want)
    throw HypothesisViolation(spec.id + ": expected " + std::to_string(want) + " operands (" + spec.arity.operands +
                              "), got " + std::to_string(in.operands.size()));
  std::size_t dim = 0;
  for (std::size_t k = 0; k < in.operands.size(); ++k) {
    const auto& op = in.operands[k];
    if (spec.level == Level::finite) {
      const auto* s = std::get_if<MatrixSet>(&op);
      if (!s) throw HypothesisViolation(spec.id + ": operand " + std::to_string(k + 1) + " must be a finite matrix set");
      const auto& a = s->elements().front();
      if (!a.square()) throw HypothesisViolation(spec.id + ": operand " + std::to_string(k + 1) + " is not square");
      if (dim == 0) dim = a.rows();
      if (a.rows() != dim) throw HypothesisViolation(spec.id + ": operands have different dimensions");
    } else if (!std::holds_alternative<FamilySet>(op)) {
      throw HypothesisViolation(spec.id + ": operand " + std::to_string(k + 1) + " must be an infinite-matrix family set");
    }
  }
  if (spec.arity.set_size == 1)
    for (std::size_t k = 0; k < in.operands.size(); ++k) {
      const std::size_t size = std::visit([](const auto& s) { return s.size(); }, in.operands[k]);
      if (size != 1)
        throw HypothesisViolation(spec.id + ": operand " + std::to_string(k + 1) + " must be a single operator");
    }
  if (spec.hypothesis) spec.hypothesis(in);
}

ChainReport evaluate_chain(const ChainSpec& spec, const ChainInput& in, const EvalConfig& cfg) {
  validate_input(spec, in);
  ChainReport rep;
  rep.chain_id = spec.id;
  rep.level = spec.level;
  rep.input_digest = io::digest(io::to_json(in));
  rep.tol = cfg.tol(spec.level);
  std::vector<GroupDef> groups;
  try {
    groups = spec.build(in, cfg);
  } catch (const BudgetExceeded& e) {
    rep.error = std::string("budget: ") + e.what();
  } catch (const ClosureOverflow& e) {
    rep.error = std::string("closure: ") + e.what();
  }
  if (!rep.error.empty()) rep.verdict = Verdict::inconclusive;
  for (const auto& g : groups) {
    GroupReport gr;
    gr.name = g.name;
    for (const auto& t : g.terms) {
      TermValue tv{t.label, {}, {}};
      try {
        tv.value = t.eval();
      } catch (const BudgetExceeded& e) {
        tv.error = std::string("budget: ") + e.what();
      } catch (const ClosureOverflow& e) {
        tv.error = std::string("closure: ") + e.what();
      } catch (const DomainError& e) {
        tv.error = std::string("domain: ") + e.what();
      }
      if (!tv.error.empty()) tv.value = Bracket{0.0, std::numeric_limits<double>::infinity(), "unavailable", true};
      gr.terms.push_back(std::move(tv));
    }
    for (std::size_t i = 0; i + 1 < gr.terms.size(); ++i) {
      const Link link = i < g.links.size() ? g.links[i] : Link::le;
      const auto& a = gr.terms[i].value;
      const auto& b = gr.terms[i + 1].value;
      gr.links.push_back(link);
      gr.slacks.push_back(link_slack(a, b, link, rep.tol));
      const Verdict v = link_verdict(a, b, link, rep.tol);
      gr.link_verdicts.push_back(v);
      gr.verdict = combine(gr.verdict, v);
    }
    rep.verdict = combine(rep.verdict, gr.verdict);
    rep.groups.push_back(std::move(gr));
  }
  return rep;
}

}  // namespace essrad

namespace essrad::io {

namespace {

// JSON has no infinities; they are written as the strings "inf" / "-inf".
json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

json to_json(const ChainParams& p) {
  return json{{"m", p.m},         {"n", p.n},     {"k", p.k},   {"alpha", p.alpha},
              {"beta", p.beta},   {"t", p.t},     {"alphas", p.alphas}, {"tau", p.tau},
              {"nu", p.nu},       {"space", to_string(p.space)}};
}

ChainParams params_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
  ChainParams p;
  auto num = [&](const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number()) throw SchemaError(path + "/" + key + ": expected a number");
    return v.get<double>();
  };
  auto integer = [&](const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw SchemaError(path + "/" + key + ": expected an integer");
    return v.get<int>();
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "m") p.m = integer(key);
    else if (key == "n") p.n = integer(key);
    else if (key == "k") p.k = integer(key);
    else if (key == "alpha") p.alpha = num(key);
    else if (key == "beta") p.beta = num(key);
    else if (key == "t") p.t = num(key);
    else if (key == "alphas" || key == "tau" || key == "nu") {
      const auto& v = it.value();
      if (!v.is_array()) throw SchemaError(path + "/" + key + ": expected an array");
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string at = path + "/" + key + "/" + std::to_string(i);
        if (key == "alphas") {
          if (!v[i].is_number()) throw SchemaError(at + ": expected a number");
          p.alphas.push_back(v[i].get<double>());
        } else {
          if (!v[i].is_number_integer()) throw SchemaError(at + ": expected an integer");
          (key == "tau" ? p.tau : p.nu).push_back(v[i].get<int>());
        }
      }
    } else if (key == "space") {
      if (!it.value().is_string()) throw SchemaError(path + "/space: expected a string");
      try {
        p.space = space_from_string(it.value().get<std::string>());
      } catch (const DomainError& e) {
        throw SchemaError(path + "/space: " + e.what());
      }
    } else {
      throw SchemaError(path + "/" + key + ": unknown parameter");
    }
  }
  return p;
}

json to_json(const ChainInput& in) {
  json ops = json::array();
  for (const auto& s : in.operands) ops.push_back(to_json(s));
  return json{{"inputs", ops}, {"params", to_json(in.params)}};
}

ChainInput input_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("/: expected an object with \"inputs\"");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "inputs" && it.key() != "params") throw SchemaError("/" + it.key() + ": unknown field");
  if (!j.contains("inputs")) throw SchemaError("/inputs: missing");
  const auto& ins = j.at("inputs");
  if (!ins.is_array() || ins.empty()) throw SchemaError("/inputs: expected a nonempty array");
  ChainInput in;
  for (std::size_t k = 0; k < ins.size(); ++k) in.operands.push_back(set_from_json(ins[k], "/inputs/" + std::to_string(k)));
  if (j.contains("params")) in.params = params_from_json(j.at("params"));
  return in;
}

json to_json(const ChainReport& r) {
  json groups = json::array();
  for (const auto& g : r.groups) {
    json terms = json::array();
    for (const auto& t : g.terms) {
      json tj{{"label", t.label}, {"lo", number(t.value.lo)}, {"hi", number(t.value.hi)}, {"method", t.value.method},
              {"flagged", t.value.flagged}};
      if (!t.error.empty()) tj["error"] = t.error;
      terms.push_back(std::move(tj));
    }
    json links = json::array();
    for (std::size_t i = 0; i < g.links.size(); ++i)
      links.push_back(json{{"relation", to_string(g.links[i])}, {"slack", number(g.slacks[i])},
                           {"verdict", to_string(g.link_verdicts[i])}});
    groups.push_back(json{{"name", g.name}, {"terms", terms}, {"links", links}, {"verdict", to_string(g.verdict)}});
  }
  json out{{"chain_id", r.chain_id}, {"level", to_string(r.level)}, {"input_digest", r.input_digest},
           {"tol", r.tol},           {"groups", groups},            {"verdict", to_string(r.verdict)}};
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

}  // namespace essrad::io
