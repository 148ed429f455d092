// Shared numeric plumbing: complex exponentials with reduced arguments,
// root-of-unity tables, compensated summation, Gauss-Legendre panels,
// a complex log-gamma, exact rationals on __int128, and a seeded RNG
// wrapper whose draws are reproducible across standard libraries.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace shiftconv {

using cplx = std::complex<double>;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128_t;
using u128 = unsigned __int128;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Euler constant and the first Stieltjes constant, fixed to 1e-12 by
// Euler-Maclaurin acceleration of sum_{k<=n} 1/k - log n  and
// sum_{k<=n} log(k)/k - log(n)^2/2 (see tests for the re-derivation).
inline constexpr double kEulerGamma = 0.5772156649015328606;
inline constexpr double kStieltjes1 = -0.0728158454836767249;

// e(t) = exp(2 pi i t), argument reduced to [-1/2, 1/2) before scaling.
inline cplx unit_phase(double t) {
  double r = t - std::floor(t + 0.5);
  return std::polar(1.0, kTwoPi * r);
}

// Long-double variant for phases accumulated from large intermediate values.
inline cplx unit_phase_l(long double t) {
  long double r = t - std::floor(t + 0.5L);
  return std::polar(1.0, static_cast<double>(kTwoPi * r));
}

// e(k/q) for k in [0, q): one table per modulus, exact integer reduction.
class UnitRoots {
 public:
  explicit UnitRoots(i64 q) : q_(q), w_(static_cast<size_t>(q)) {
    if (q < 1) throw std::invalid_argument("UnitRoots: q must be positive");
    for (i64 k = 0; k < q; ++k)
      w_[static_cast<size_t>(k)] =
          std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(q));
  }
  // k may be any integer; reduced mod q.
  cplx at(i64 k) const {
    i64 r = k % q_;
    if (r < 0) r += q_;
    return w_[static_cast<size_t>(r)];
  }
  cplx at_reduced(i64 k) const { return w_[static_cast<size_t>(k)]; }
  i64 modulus() const { return q_; }

 private:
  i64 q_;
  std::vector<cplx> w_;
};

// Kahan-compensated complex accumulator.
class KahanSum {
 public:
  void add(cplx x) {
    add_part(re_, cre_, x.real());
    add_part(im_, cim_, x.imag());
  }
  cplx value() const { return {re_, im_}; }

 private:
  static void add_part(double& s, double& c, double v) {
    double y = v - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double re_ = 0, im_ = 0, cre_ = 0, cim_ = 0;
};

// Deterministic RNG. mt19937_64 raw draws only; the modulo draw is spelled
// out here so results do not depend on std::uniform_int_distribution.
class Rng {
 public:
  explicit Rng(u64 seed) : g_(seed) {}
  u64 next() { return g_(); }
  // uniform on [lo, hi] inclusive
  i64 uniform(i64 lo, i64 hi) {
    u64 span = static_cast<u64>(hi - lo) + 1;
    return lo + static_cast<i64>(g_() % span);
  }
  double real01() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 g_;
};

// Runs fn(i) for i in [0, n) on up to `threads` workers. Results must be
// written to preallocated per-index slots; the caller reduces serially.
void parallel_for(i64 n, int threads, const std::function<void(i64)>& fn);

int default_threads();

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
const std::vector<double>& gl16_nodes();
const std::vector<double>& gl16_weights();

// Composite 16-point panels over [a, b].
cplx integrate_panels(const std::function<cplx(double)>& f, double a, double b,
                      int panels);

// Panel count sized from an oscillation-cycle estimate.
cplx integrate_oscillatory(const std::function<cplx(double)>& f, double a,
                           double b, double cycles);

// ---------------------------------------------------------------------------
// Complex log-gamma (Lanczos, g = 607/128, 15 terms; reflection for
// Re z < 1/2). Imaginary part is correct only mod 2*pi; every use here
// exponentiates differences, which is insensitive to that.
// ---------------------------------------------------------------------------
cplx log_gamma(cplx z);

// ---------------------------------------------------------------------------
// Exact rationals on __int128 (Farey endpoints; small denominators only).
// ---------------------------------------------------------------------------
struct Rat {
  i128 num = 0;
  i128 den = 1;

  Rat() = default;
  Rat(i64 n, i64 d) : num(n), den(d) { normalize(); }
  static Rat make(i128 n, i128 d) {
    Rat r;
    r.num = n;
    r.den = d;
    r.normalize();
    return r;
  }

  void normalize();
  Rat operator+(const Rat& o) const { return make(num * o.den + o.num * den, den * o.den); }
  Rat operator-(const Rat& o) const { return make(num * o.den - o.num * den, den * o.den); }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rat& o) const { return num * o.den < o.num * den; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

std::string to_string(const Rat& r);

}  // namespace shiftconv
