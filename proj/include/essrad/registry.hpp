#pragma once

#include <string>
#include <vector>

#include "essrad/chain.hpp"
#include "essrad/json_io.hpp"

namespace essrad {

/// Every chain, finite level first, each level in catalog order.
const std::vector<ChainSpec>& registry();
/// Chains of one level.
std::vector<const ChainSpec*> chains_of(Level level);
/// nullptr when the id is unknown.
const ChainSpec* find_chain(const std::string& id);

namespace io {
/// id, level, title, anchors, hypothesis and arity of every chain.
json catalog_json();
}  // namespace io

}  // namespace essrad
