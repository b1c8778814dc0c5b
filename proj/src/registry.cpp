#include "essrad/registry.hpp"

#include "registry_common.hpp"

namespace essrad {

const std::vector<ChainSpec>& registry() {
  static const std::vector<ChainSpec> all = [] {
    auto v = reg::finite_catalog();
    for (auto& s : reg::essential_catalog()) v.push_back(std::move(s));
    return v;
  }();
  return all;
}

std::vector<const ChainSpec*> chains_of(Level level) {
  std::vector<const ChainSpec*> out;
  for (const auto& s : registry())
    if (s.level == level) out.push_back(&s);
  return out;
}

const ChainSpec* find_chain(const std::string& id) {
  for (const auto& s : registry())
    if (s.id == id) return &s;
  return nullptr;
}

namespace io {

json catalog_json() {
  json out = json::array();
  for (const auto& s : registry()) {
    out.push_back(json{{"id", s.id},
                       {"level", to_string(s.level)},
                       {"title", s.title},
                       {"anchors", s.anchors},
                       {"hypothesis", s.hypothesis_text},
                       {"arity",
                        {{"operands", s.arity.operands},
                         {"set_size", s.arity.set_size},
                         {"set_max_m", s.arity.set_max_m},
                         {"params", s.arity.params}}}});
  }
  return out;
}

}  // namespace io

}  // namespace essrad
