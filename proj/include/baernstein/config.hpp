#ifndef BAERNSTEIN_CONFIG_HPP
#define BAERNSTEIN_CONFIG_HPP

#include <cstdint>

namespace baernstein {

/// Size and iteration guards. Exceeding a guard is a hard error, never a
/// silent approximation.
struct Guards {
  unsigned max_ground = 12;        // family trace ground / membership set size
  unsigned max_support = 14;       // exact primal norm evaluation
  unsigned max_support_dual = 10;  // dual norm bracketing
  unsigned max_support_oracle = 9; // brute-force oracles
  std::uint64_t iteration_budget = 100000;
};

}  // namespace baernstein

#endif  // BAERNSTEIN_CONFIG_HPP
