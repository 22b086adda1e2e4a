#pragma once

#include "xiforge/lfun.hpp"
#include "xiforge/quad_field.hpp"

#include <map>
#include <memory>
#include <tuple>
#include <utility>
#include <vector>

namespace fixtures {

/// Shared Hecke instances keyed by (D, character index, n_max).
inline const xiforge::HeckeData& hecke(long D, int character, long n_max = 20000) {
  static std::map<std::tuple<long, int, long>, std::unique_ptr<xiforge::HeckeData>> cache;
  auto& slot = cache[{D, character, n_max}];
  if (!slot) {
    const xiforge::QuadFieldData f = xiforge::build_field(D);
    slot = std::make_unique<xiforge::HeckeData>(f, xiforge::characters(f).at(character),
                                                xiforge::hecke_coefficients(f, n_max));
  }
  return *slot;
}

/// (D, character index) for every built-in character of D = -3, -4, -20.
inline std::vector<std::pair<long, int>> builtin_instances() {
  return {{-3, 0}, {-4, 0}, {-20, 0}, {-20, 1}};
}

}  // namespace fixtures
