#include "essrad/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "essrad/detail/weight_node.hpp"
#include "essrad/errors.hpp"

namespace essrad::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw SchemaError((path.empty() ? std::string("/") : path) + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(number(j[k], path + "/" + std::to_string(k)));
  return v;
}

// Domain and shape violations are reported with the field path attached.
template <class F>
auto located(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw DomainError((path.empty() ? std::string("/") : path) + ": " + e.what());
  } catch (const ShapeError& e) {
    throw ShapeError((path.empty() ? std::string("/") : path) + ": " + e.what());
  }
}

}  // namespace

bool is_matrix_json(const json& j) { return j.is_object() && j.contains("entries"); }

FiniteMatrix matrix_from_json(const json& j, const std::string& path) {
  const auto rows = integer(field(j, "rows", path), path + "/rows");
  const auto cols = integer(field(j, "cols", path), path + "/cols");
  if (rows < 1) fail(path + "/rows", "must be at least 1");
  if (cols < 1) fail(path + "/cols", "must be at least 1");
  auto e = numbers(field(j, "entries", path), path + "/entries");
  if (e.size() != static_cast<std::size_t>(rows * cols))
    fail(path + "/entries", "expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(e.size()));
  return located(path, [&] { return FiniteMatrix(rows, cols, std::move(e)); });
}

WeightSequence weights_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return located(path, [&] { return WeightSequence::constant(j.get<double>()); });
  const json& kj = field(j, "kind", path);
  if (!kj.is_string()) fail(path + "/kind", "expected a string");
  const std::string kind = kj.get<std::string>();
  auto num = [&](const char* key) { return number(field(j, key, path), path + "/" + key); };
  auto nums = [&](const char* key) { return numbers(field(j, key, path), path + "/" + key); };
  auto child = [&](const char* key) { return weights_from_json(field(j, key, path), path + "/" + key); };
  auto children = [&](const char* key) {
    const json& arr = field(j, key, path);
    if (!arr.is_array() || arr.empty()) fail(path + "/" + key, "expected a nonempty array");
    std::vector<WeightSequence> out;
    for (std::size_t k = 0; k < arr.size(); ++k)
      out.push_back(weights_from_json(arr[k], path + "/" + key + "/" + std::to_string(k)));
    return out;
  };
  return located(path, [&]() -> WeightSequence {
    if (kind == "constant") return WeightSequence::constant(num("c"));
    if (kind == "eventually_constant") return WeightSequence::eventually_constant(nums("prefix"), num("tail"));
    if (kind == "rational") return WeightSequence::rational(nums("p"), nums("q"));
    if (kind == "prefix_limit") return WeightSequence::prefix_with_limit(nums("prefix"), num("limit"));
    if (kind == "shift") return child("of").shifted(integer(field(j, "by", path), path + "/by"));
    if (kind == "power") return child("of").pow(num("t"));
    if (kind == "scale") return child("of").scaled(num("c"));
    if (kind == "product") {
      auto cs = children("factors");
      WeightSequence r = cs.front();
      for (std::size_t k = 1; k < cs.size(); ++k) r = r * cs[k];
      return r;
    }
    if (kind == "sum") {
      auto cs = children("terms");
      WeightSequence r = cs.front();
      for (std::size_t k = 1; k < cs.size(); ++k) r = r + cs[k];
      return r;
    }
    fail(path + "/kind", "unknown weight kind \"" + kind + "\"");
  });
}

OperatorFamily family_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an operator family object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "bands" && it.key() != "diagonal" && it.key() != "finite_rank")
      fail(path + "/" + it.key(), "unknown field");
  std::vector<Band> bands;
  if (auto it = j.find("bands"); it != j.end()) {
    if (!it->is_array()) fail(path + "/bands", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string p = path + "/bands/" + std::to_string(k);
      const json& b = (*it)[k];
      bands.push_back(Band{integer(field(b, "offset", p), p + "/offset"), weights_from_json(field(b, "weights", p), p + "/weights")});
    }
  }
  if (auto it = j.find("diagonal"); it != j.end()) bands.push_back(Band{0, weights_from_json(*it, path + "/diagonal")});
  std::optional<FiniteMatrix> corner;
  if (auto it = j.find("finite_rank"); it != j.end()) corner = matrix_from_json(*it, path + "/finite_rank");
  return located(path, [&] { return OperatorFamily(std::move(bands), std::move(corner)); });
}

OperatorSet set_from_json(const json& j, const std::string& path) {
  if (j.is_object()) {
    json arr = json::array({j});
    return set_from_json(arr, path);
  }
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty list of operators");
  if (is_matrix_json(j[0])) {
    std::vector<FiniteMatrix> ms;
    for (std::size_t k = 0; k < j.size(); ++k) ms.push_back(matrix_from_json(j[k], path + "/" + std::to_string(k)));
    return located(path, [&] { return OperatorSet(MatrixSet(std::move(ms))); });
  }
  std::vector<OperatorFamily> fs;
  for (std::size_t k = 0; k < j.size(); ++k) fs.push_back(family_from_json(j[k], path + "/" + std::to_string(k)));
  return located(path, [&] { return OperatorSet(FamilySet(std::move(fs))); });
}

json to_json(const FiniteMatrix& a) {
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", a.entries()}};
}

json to_json(const WeightSequence& w) {
  using K = WeightSequence::Kind;
  const detail::WeightNode& n = w.node();
  auto child = [&](std::size_t k) { return to_json(make_sequence(n.children[k])); };
  switch (n.kind()) {
    case K::constant: return json{{"kind", "constant"}, {"c", n.scalar}};
    case K::eventually_constant: return json{{"kind", "eventually_constant"}, {"prefix", n.values}, {"tail", n.scalar}};
    case K::rational: return json{{"kind", "rational"}, {"p", n.values}, {"q", n.values2}};
    case K::prefix_limit: return json{{"kind", "prefix_limit"}, {"prefix", n.values}, {"limit", n.scalar}};
    case K::shift: return json{{"kind", "shift"}, {"of", child(0)}, {"by", n.offset}};
    case K::power: return json{{"kind", "power"}, {"of", child(0)}, {"t", n.scalar}};
    case K::scale: return json{{"kind", "scale"}, {"of", child(0)}, {"c", n.scalar}};
    case K::product:
    case K::sum: {
      json arr = json::array();
      for (std::size_t k = 0; k < n.children.size(); ++k) arr.push_back(child(k));
      return n.kind() == K::product ? json{{"kind", "product"}, {"factors", arr}} : json{{"kind", "sum"}, {"terms", arr}};
    }
  }
  return json();
}

json to_json(const OperatorFamily& a) {
  json bands = json::array();
  for (const auto& b : a.bands()) bands.push_back(json{{"offset", b.offset}, {"weights", to_json(b.weights)}});
  json out{{"bands", bands}};
  if (a.corner()) out["finite_rank"] = to_json(*a.corner());
  return out;
}

json to_json(const OperatorSet& s) {
  json arr = json::array();
  std::visit([&](const auto& set) {
    for (const auto& e : set) arr.push_back(to_json(e));
  }, s);
  return arr;
}

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(source + ": " + e.what());
  }
}

json load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

std::string dump(const json& j, int indent) { return j.dump(indent); }

std::string digest(const json& j) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : dump(j)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace essrad::io
