#pragma once

#include "quadstrata/signature.hpp"

#include <vector>

namespace quadstrata::testing {

inline StratumSignature make_sig(int genus, std::vector<int> zeros, std::vector<int> evens = {},
                                 std::vector<int> odds = {}, int doubles = 0) {
  StratumSignature sig;
  sig.genus = genus;
  sig.zero_orders = std::move(zeros);
  sig.even_pole_orders = std::move(evens);
  sig.odd_pole_orders = std::move(odds);
  sig.double_pole_count = doubles;
  return sig;
}

inline RootedResidueConfig make_config(std::vector<GaussianRational> even_roots,
                                       std::vector<GaussianRational> double_roots = {}) {
  RootedResidueConfig config;
  config.even_pole_roots = std::move(even_roots);
  config.double_pole_roots = std::move(double_roots);
  return config;
}

}  // namespace quadstrata::testing
