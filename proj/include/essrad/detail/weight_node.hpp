#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "essrad/weight_sequence.hpp"

namespace essrad::detail {

// Expression node behind a WeightSequence. The plain data members carry the
// construction parameters so serializers can walk the tree without
// downcasting; their meaning depends on kind():
//   constant             scalar = c
//   eventually_constant  values = prefix, scalar = tail
//   rational             values = p, values2 = q
//   prefix_limit         values = prefix, scalar = limit
//   shift                children[0], offset = s
//   product / sum        children
//   power                children[0], scalar = t
//   scale                children[0], scalar = c
struct WeightNode {
  virtual ~WeightNode() = default;

  virtual WeightSequence::Kind kind() const = 0;
  // Only called with i >= 1 and n >= 1.
  virtual double at(std::int64_t i) const = 0;
  virtual double limit() const = 0;
  virtual double tail_sup(std::int64_t n) const = 0;
  virtual double tail_inf(std::int64_t n) const = 0;

  std::vector<double> values;
  std::vector<double> values2;
  double scalar = 0.0;
  std::int64_t offset = 0;
  std::vector<std::shared_ptr<const WeightNode>> children;
  std::size_t complexity = 1;
};

}  // namespace essrad::detail
