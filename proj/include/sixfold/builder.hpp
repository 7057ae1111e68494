#pragma once

#include <functional>
#include <stdexcept>

#include "sixfold/core.hpp"
#include "sixfold/pasting.hpp"
#include "sixfold/subdivision.hpp"

namespace sixfold {

// Builds the complex of the given level: levels 1..3 by subdivision alone,
// each further level by one subdivision round followed by one pasting
// round. The hook, when set, runs after each completed level.
inline Complex build_complex(
    int level, const RuleTable& table,
    const std::function<void(const Complex&, int)>& level_hook = nullptr) {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  Complex c = make_level1_complex(table);
  if (level_hook) level_hook(c, 1);
  for (int lvl = 2; lvl <= level; ++lvl) {
    subdivide_round(c);
    if (lvl >= 4) pasting_round(c);
    if (level_hook) level_hook(c, lvl);
  }
  return c;
}

inline Complex build_complex(int level) {
  return build_complex(level, default_rule_table());
}

}  // namespace sixfold
