#include "shiftconv/coefficients.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "shiftconv/arith.hpp"

namespace shiftconv {

CoefficientSequence CoefficientSequence::ones() { return CoefficientSequence(Kind::ones); }
CoefficientSequence CoefficientSequence::tau_seq() { return CoefficientSequence(Kind::tau); }
CoefficientSequence CoefficientSequence::tau3_seq() { return CoefficientSequence(Kind::tau3); }

std::string CoefficientSequence::name() const {
  switch (kind_) {
    case Kind::ones: return "ones";
    case Kind::tau: return "tau";
    case Kind::tau3: return "tau3";
    case Kind::file: return "file";
  }
  return "?";
}

double CoefficientSequence::at(i64 n) const {
  switch (kind_) {
    case Kind::ones:
      if (n < 1) throw std::out_of_range("CoefficientSequence: n must be >= 1");
      return 1.0;
    case Kind::tau:
      return static_cast<double>(tau(static_cast<u64>(n)));
    case Kind::tau3:
      return static_cast<double>(tau3(static_cast<u64>(n)));
    case Kind::file: {
      i64 idx = n - n_min_;
      if (idx < 0 || idx >= static_cast<i64>(data_.size()))
        throw std::out_of_range("CoefficientSequence: n outside ingested range");
      return data_[static_cast<size_t>(idx)];
    }
  }
  return 0.0;
}

std::pair<i64, i64> CoefficientSequence::range() const {
  if (kind_ == Kind::file) return {n_min_, n_min_ + static_cast<i64>(data_.size()) - 1};
  return {1, std::numeric_limits<i64>::max() / 4};
}

bool CoefficientSequence::covers(i64 lo, i64 hi) const {
  auto [a, b] = range();
  return lo >= a && hi <= b && lo <= hi;
}

namespace {

// tau on [1, hi] by the divisor sieve.
std::vector<int> tau_table(i64 hi) {
  std::vector<int> t(static_cast<size_t>(hi) + 1, 0);
  for (i64 d = 1; d <= hi; ++d)
    for (i64 m = d; m <= hi; m += d) ++t[static_cast<size_t>(m)];
  return t;
}

}  // namespace

std::vector<double> CoefficientSequence::values(i64 lo, i64 hi) const {
  if (lo < 1 || hi < lo) throw std::invalid_argument("CoefficientSequence::values: bad range");
  if (!covers(lo, hi)) throw std::out_of_range("CoefficientSequence: requested range not covered");
  size_t len = static_cast<size_t>(hi - lo + 1);
  std::vector<double> out(len, 0.0);
  switch (kind_) {
    case Kind::ones: {
      for (auto& v : out) v = 1.0;
      break;
    }
    case Kind::tau: {
      for (i64 d = 1; d <= hi; ++d) {
        i64 m = ((lo + d - 1) / d) * d;
        for (; m <= hi; m += d) out[static_cast<size_t>(m - lo)] += 1.0;
      }
      break;
    }
    case Kind::tau3: {
      if (hi > 8'000'000)
        throw std::invalid_argument("CoefficientSequence: tau3 sieve capped at 8e6");
      std::vector<int> t = tau_table(hi);
      // tau3(n) = sum_{d | n} tau(n / d)
      for (i64 d = 1; d <= hi; ++d) {
        i64 m = ((lo + d - 1) / d) * d;
        for (; m <= hi; m += d) out[static_cast<size_t>(m - lo)] += t[static_cast<size_t>(m / d)];
      }
      break;
    }
    case Kind::file: {
      for (i64 n = lo; n <= hi; ++n) out[static_cast<size_t>(n - lo)] = at(n);
      break;
    }
  }
  return out;
}

CoefficientSequence ingest_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ingest: cannot open " + path);
  std::string line;
  int lineno = 0;
  i64 n_min = 0, n_max = -1;
  if (!std::getline(in, line)) throw std::runtime_error("ingest: empty file " + path);
  ++lineno;
  if (std::sscanf(line.c_str(), "# n_min=%" SCNd64 " n_max=%" SCNd64, &n_min, &n_max) != 2)
    throw std::runtime_error("ingest: line 1: expected header '# n_min=<int> n_max=<int>'");
  if (n_max < n_min) throw std::runtime_error("ingest: header range is empty");

  CoefficientSequence seq(CoefficientSequence::Kind::file);
  seq.n_min_ = n_min;
  seq.data_.assign(static_cast<size_t>(n_max - n_min + 1),
                   std::numeric_limits<double>::quiet_NaN());
  std::vector<bool> seen(seq.data_.size(), false);

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    i64 n;
    double v;
    if (std::sscanf(line.c_str(), "%" SCNd64 ",%lf", &n, &v) != 2)
      throw std::runtime_error("ingest: line " + std::to_string(lineno) + ": expected 'n,value'");
    if (!std::isfinite(v))
      throw std::runtime_error("ingest: line " + std::to_string(lineno) + ": non-finite value");
    if (n < n_min || n > n_max)
      throw std::runtime_error("ingest: line " + std::to_string(lineno) + ": n outside header range");
    seq.data_[static_cast<size_t>(n - n_min)] = v;
    seen[static_cast<size_t>(n - n_min)] = true;
  }
  for (size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i])
      throw std::runtime_error("ingest: range gap at n=" + std::to_string(n_min + static_cast<i64>(i)));
  }
  return seq;
}

void write_sequence_file(const std::string& path, i64 n_min,
                         const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_sequence_file: cannot open " + path);
  i64 n_max = n_min + static_cast<i64>(values.size()) - 1;
  out << "# n_min=" << n_min << " n_max=" << n_max << "\n";
  char buf[64];
  for (size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%" PRId64 ",%.17g\n", n_min + static_cast<i64>(i), values[i]);
    out << buf;
  }
}

}  // namespace shiftconv
