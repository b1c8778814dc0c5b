#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "broken_chain.hpp"
#include "essrad/cli.hpp"
#include "essrad/registry.hpp"

using namespace essrad;

namespace {

std::string fixture(const std::string& name) { return std::string(ESSRAD_FIXTURES) + "/" + name; }

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args, const std::map<std::string, std::string>& env = {},
        const std::vector<ChainSpec>* catalog = nullptr) {
  std::ostringstream out, err;
  const EnvLookup lookup = [env](const std::string& k) -> std::optional<std::string> {
    const auto it = env.find(k);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  const int code = run_cli(args, out, err, lookup, catalog);
  return {code, out.str(), err.str()};
}

io::json result_of(const Run& r) { return io::json::parse(r.out).at("result"); }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "essrad_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// Registry chains plus the reversed chain and one whose upper term is unbounded.
std::vector<ChainSpec> test_catalog() {
  std::vector<ChainSpec> c = registry();
  c.push_back(broken_fixture::reversed_product_chain());
  auto open = broken_fixture::reversed_product_chain();
  open.id = "X2";
  open.build = [](const ChainInput&, const EvalConfig&) {
    return std::vector<GroupDef>{GroupDef{"main",
                                          {TermDef{"one", [] { return exact(1.0, "const"); }},
                                           TermDef{"unbounded", [] { return Bracket{0.0, INFINITY, "none", true}; }}},
                                          {}}};
  };
  c.push_back(open);
  return c;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check passes on the all-ones pair") {
    const auto r = run({"check", "--id", "F1", "--input", fixture("pair_j2.json")});
    CHECK(r.code == exit_pass);
    const auto doc = io::json::parse(r.out);
    CHECK(doc.at("verdict") == "pass");
    CHECK(doc.at("reports").size() == 1);
    CHECK(doc.at("config").at("tolerances").at("finite") == 1e-9);
  }

  TEST_CASE("exit codes for fail and inconclusive") {
    const auto cat = test_catalog();
    CHECK(run({"check", "--id", "X1", "--input", fixture("pair_j2.json")}, {}, &cat).code == exit_fail);
    CHECK(run({"check", "--id", "X2", "--input", fixture("pair_j2.json")}, {}, &cat).code == exit_inconclusive);
    CHECK(run({"check", "--id", "F1", "--id", "X1", "--input", fixture("pair_j2.json")}, {}, &cat).code == exit_fail);
    CHECK(run({"sweep", "--id", "X1", "--trials", "3"}, {}, &cat).code == exit_fail);
    CHECK(run({"sweep", "--id", "X2", "--trials", "3"}, {}, &cat).code == exit_inconclusive);
    CHECK(run({"sweep", "--id", "X2", "--trials", "3", "--max-inconclusive", "1"}, {}, &cat).code == exit_pass);
  }

  TEST_CASE("hypothesis and input errors exit 2") {
    const auto odd = run({"check", "--id", "E19", "--input", fixture("e19_odd_m.json")});
    CHECK(odd.code == exit_input_error);
    CHECK(odd.err.find("even") != std::string::npos);

    const auto bad = run({"check", "--id", "F1", "--input", fixture("malformed.json")});
    CHECK(bad.code == exit_input_error);
    CHECK(bad.err.find("line 4") != std::string::npos);

    const auto field = run({"check", "--id", "F1", "--input", fixture("bad_field.json")});
    CHECK(field.code == exit_input_error);
    CHECK(field.err.find("/inputs/1") != std::string::npos);

    CHECK(run({"check", "--id", "F1", "--input", fixture("missing.json")}).code == exit_input_error);
    CHECK(run({"check", "--id", "Z9", "--random"}).code == exit_input_error);
    CHECK(run({"check", "--id", "F1"}).code == exit_input_error);
    CHECK(run({"check", "--id", "E1", "--input", fixture("pair_j2.json")}).code == exit_input_error);
    CHECK(run({"frobnicate"}).code == exit_input_error);
    CHECK(run({"sweep", "--registry", "sideways"}).code == exit_input_error);
    CHECK(run({"--help"}).code == exit_pass);
    CHECK(run({"--version"}).out.find(toolkit_version) != std::string::npos);
  }

  TEST_CASE("random checks are deterministic") {
    const auto a = run({"check", "--id", "F2", "--random", "--seed", "1"});
    const auto b = run({"check", "--id", "F2", "--random", "--seed", "1"});
    CHECK(a.code == exit_pass);
    CHECK(a.out == b.out);
    const auto c = run({"check", "--id", "F2", "--random", "--seed", "2"});
    CHECK(a.out != c.out);
    const auto doc = io::json::parse(a.out);
    CHECK(doc.at("reports")[0].contains("input"));
    CHECK(doc.at("config").at("random").at("seed") == 1);
  }

  TEST_CASE("sweeps are byte-identical across runs and thread counts") {
    const std::vector<std::string> base{"sweep", "--registry", "finite", "--trials", "3", "--seed", "42"};
    const auto a = run(base);
    const auto b = run(base);
    auto threaded = base;
    threaded.insert(threaded.end(), {"--threads", "3"});
    const auto c = run(threaded);
    CHECK(a.code == exit_pass);
    CHECK(a.out == b.out);
    const auto strip_threads = [](std::string s) {
      auto doc = io::json::parse(s);
      doc["config"].erase("threads");
      return io::dump(doc);
    };
    CHECK(strip_threads(a.out) == strip_threads(c.out));
    const auto doc = io::json::parse(a.out);
    CHECK(doc.at("chains").size() == 16);
    CHECK(doc.at("totals").at("fail") == 0);
    CHECK(doc.at("config").at("seed") == 42);
  }

  TEST_CASE("csv output") {
    const auto r = run({"sweep", "--id", "F1", "--id", "F13", "--trials", "2", "--format", "csv"});
    CHECK(r.code == exit_pass);
    std::istringstream lines(r.out);
    std::string line;
    bool header_seen = false;
    int rows = 0;
    while (std::getline(lines, line)) {
      if (line.rfind("#", 0) == 0) continue;
      if (!header_seen) {
        CHECK(line == "chain_id,trial,term_index,term_label,lo,hi,slack,verdict");
        header_seen = true;
        continue;
      }
      ++rows;
      // Quoted labels may contain commas; count fields outside quotes.
      int fields = 1;
      bool quoted = false;
      for (char ch : line) {
        if (ch == '"') quoted = !quoted;
        if (ch == ',' && !quoted) ++fields;
      }
      CHECK(fields == 8);
    }
    CHECK(header_seen);
    CHECK(rows > 0);
  }

  TEST_CASE("environment overrides are applied and echoed") {
    const auto r = run({"check", "--id", "E10", "--input", fixture("shift_pair.json")},
                       {{"ESSRAD_JMAX", "3"}, {"ESSRAD_GAMMA_KMAX", "20"}, {"ESSRAD_BUDGET", "777"}});
    CHECK(r.code == exit_pass);
    const auto cfg = io::json::parse(r.out).at("config");
    CHECK(cfg.at("env_overrides").at("ESSRAD_JMAX") == "3");
    CHECK(io::dump(cfg).find("777") != std::string::npos);
    CHECK(run({"catalog"}, {{"ESSRAD_JMAX", "zero"}}).code == exit_input_error);
    CHECK(run({"catalog"}, {{"ESSRAD_SET_DEPTH", "99"}}).code == exit_input_error);

    io::json echoed;
    const auto c = config_from_env([](const std::string& k) -> std::optional<std::string> {
      if (k == "ESSRAD_SET_DEPTH") return "2";
      return std::nullopt;
    }, &echoed);
    CHECK(c.ess_set.m_max == 2);
    CHECK(echoed.at("ESSRAD_SET_DEPTH") == "2");
  }

  TEST_CASE("unwritable output path") {
    CHECK(run({"sweep", "--id", "F1", "--trials", "1", "--output", "/nonexistent-dir/out.json"}).code == exit_input_error);
    CHECK(run({"check", "--id", "F1", "--input", fixture("pair_j2.json"), "--output", "/nonexistent-dir/x.json"}).code ==
          exit_input_error);
  }

  TEST_CASE("report files") {
    const auto path = scratch("sweep.json");
    std::filesystem::remove(path);
    const auto r = run({"sweep", "--id", "F3", "--trials", "2", "--output", path.string(), "--dump-inputs"});
    CHECK(r.code == exit_pass);
    const auto doc = io::json::parse(slurp(path));
    CHECK(doc.at("chains")[0].at("trials")[0].contains("input"));
    CHECK(r.out.find("totals") != std::string::npos);
  }

  TEST_CASE("estimate examples") {
    const auto jsr = run({"estimate", "jsr", "--input", fixture("golden_pair.json"), "--delta", "1e-6"});
    REQUIRE(jsr.code == exit_pass);
    const double phi = (1 + std::sqrt(5.0)) / 2;
    const auto j = result_of(jsr);
    CHECK(j.at("lo").get<double>() >= 1.618033 - 1e-12);
    CHECK(j.at("hi").get<double>() <= 1.618034 + 1e-12);
    CHECK(j.at("lo").get<double>() <= phi);
    CHECK(j.at("hi").get<double>() >= phi);

    const auto g = result_of(run({"estimate", "gamma", "--input", fixture("identity_family.json")}));
    CHECK(std::abs(g.at("lo").get<double>() - 1) <= 1e-6);
    CHECK(std::abs(g.at("hi").get<double>() - 1) <= 1e-6);

    const auto rho = result_of(run({"estimate", "rho", "--input", fixture("perm2.json")}));
    CHECK(std::abs(rho.at("lo").get<double>() - 1) <= 1e-10);
    CHECK(std::abs(rho.at("hi").get<double>() - 1) <= 1e-10);

    const auto norm = result_of(run({"estimate", "norm", "--input", fixture("perm2.json"), "--space", "l1"}));
    CHECK(norm.at("hi").get<double>() == 1.0);
  }

  TEST_CASE("estimate without an oracle warns but succeeds") {
    const auto path = scratch("two_band.json");
    std::ofstream(path) << R"({"bands": [{"offset": 0, "weights": {"kind": "constant", "c": 1.0}},
                                         {"offset": 1, "weights": {"kind": "constant", "c": 1.0}}]})";
    const auto r = run({"estimate", "ess", "--input", path.string()});
    CHECK(r.code == exit_pass);
    const auto doc = io::json::parse(r.out);
    CHECK_FALSE(doc.at("warnings").empty());
    CHECK(doc.at("result").at("lo").get<double>() <= doc.at("result").at("hi").get<double>());
  }

  TEST_CASE("catalog command") {
    const auto r = run({"catalog"});
    CHECK(r.code == exit_pass);
    CHECK(io::json::parse(r.out).size() == registry().size());
  }
}
