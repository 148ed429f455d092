// Measured-constant regression records: a sweep evaluates |quantity| /
// theoretical_bound over sampled parameters and retains the maximizing
// tuple. Re-running with the same seed reproduces the report exactly.
#pragma once

#include <string>

#include "shiftconv/common.hpp"

namespace shiftconv {

template <typename ArgMax>
struct BoundReport {
  double max_ratio = 0;
  ArgMax argmax{};
  u64 samples = 0;
  std::string bound_formula;

  void consider(double ratio, const ArgMax& a) {
    ++samples;
    if (ratio > max_ratio) {
      max_ratio = ratio;
      argmax = a;
    }
  }
};

}  // namespace shiftconv
