// Arithmetic coefficient sources A(n): the built-ins (constant 1, tau,
// tau3) and file-backed sequences in the shared format
//
//   # n_min=<int> n_max=<int>
//   n,value
//   ...
#pragma once

#include <string>

#include "shiftconv/common.hpp"

namespace shiftconv {

class CoefficientSequence {
 public:
  enum class Kind { ones, tau, tau3, file };

  static CoefficientSequence ones();
  static CoefficientSequence tau_seq();
  static CoefficientSequence tau3_seq();

  double at(i64 n) const;
  // Contiguous values on [lo, hi]; built-ins are sieved in one pass.
  std::vector<double> values(i64 lo, i64 hi) const;
  bool covers(i64 lo, i64 hi) const;
  std::pair<i64, i64> range() const;
  Kind kind() const { return kind_; }
  std::string name() const;

  friend CoefficientSequence ingest_coefficients(const std::string& path);

 private:
  explicit CoefficientSequence(Kind k) : kind_(k) {}
  Kind kind_;
  i64 n_min_ = 1;
  std::vector<double> data_;  // file-backed only
};

// Parses the shared sequence format. Throws std::runtime_error with the
// offending line number on parse errors, names the first missing n on
// gaps, and rejects non-finite values.
CoefficientSequence ingest_coefficients(const std::string& path);

void write_sequence_file(const std::string& path, i64 n_min,
                         const std::vector<double>& values);

}  // namespace shiftconv
