#pragma once
// A chain with its inequality written backwards, used to exercise the fail
// path end to end. Never registered outside the tests.

#include <vector>

#include "essrad/chain.hpp"
#include "essrad/spectral.hpp"

namespace broken_fixture {

inline essrad::ChainSpec reversed_product_chain() {
  using namespace essrad;
  ChainSpec s;
  s.id = "X1";
  s.level = Level::finite;
  s.title = "rho(AB) <= rho(A o B), deliberately false";
  s.anchors = {"reversed"};
  s.hypothesis_text = "two nonnegative square matrices";
  s.arity = Arity{.operands = "2 matrices", .count = [](const ChainParams&) { return 2; }, .set_size = 1,
                  .set_max_m = 3, .params = {}};
  s.build = [](const ChainInput& in, const EvalConfig& cfg) {
    const auto a = std::get<MatrixSet>(in.operands[0])[0];
    const auto b = std::get<MatrixSet>(in.operands[1])[0];
    return std::vector<GroupDef>{GroupDef{
        "main",
        {TermDef{"rho(AB)", [=] { return spectral_radius(matrix_product(a, b), cfg.spectral); }},
         TermDef{"rho(A o B)", [=] { return spectral_radius(hadamard_product(a, b), cfg.spectral); }}},
        {}}};
  };
  s.draw = [](std::uint64_t, const std::function<double()>&) { return ChainParams{}; };
  return s;
}

}  // namespace broken_fixture
