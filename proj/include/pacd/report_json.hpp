#pragma once

#include <nlohmann/json.hpp>

#include "pacd/likelihood.hpp"
#include "pacd/rational.hpp"

namespace pacd {

/// {"n","M","N","S","C1","L","components":[{"size","vertices"}]}
template <class Scalar>
nlohmann::json to_json(const LikelihoodReport<Scalar>& r) {
  nlohmann::json components = nlohmann::json::array();
  for (std::size_t k = 0; k < r.forest.size(); ++k) {
    const auto members = r.forest.members(k);
    components.push_back({{"size", members.size()}, {"vertices", std::vector<Vertex>(members.begin(), members.end())}});
  }
  return {{"n", r.n},
          {"M", r.prefix_vertices},
          {"N", r.late_count},
          {"S", to_double(r.s)},
          {"C1", to_double(r.c1)},
          {"L", to_double(r.l)},
          {"components", std::move(components)}};
}

}  // namespace pacd
