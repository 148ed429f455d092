// Complete exponential sums (Gauss / Kloosterman / Salie), representation
// counts for sums of squares, and the two generating sums of the circle
// method:
//
//   G(a,b;q)  = sum_{x mod q} e((a x^2 + b x)/q)
//   S(m,n;c)  = sum_{x mod c, (x,c)=1} e((m x + n xbar)/c)
//   Salie     = sum_{x mod p}* (x/p) e((m x + n xbar)/p)
//   F(alpha)  = sum_{|m| <= sqrt(X)} e(alpha m^2)
//   G(alpha)  = sum_{X/2 <= n <= X} A(n+h) e(-alpha n) phi(n/X)
#pragma once

#include "shiftconv/arith.hpp"
#include "shiftconv/coefficients.hpp"
#include "shiftconv/common.hpp"
#include "shiftconv/test_function.hpp"

namespace shiftconv {

struct ThetaSumParams {
  double X = 2;  // X >= 2
  i64 h = 0;     // 0 <= h <= X
  ThetaSumParams(double X_, i64 h_) : X(X_), h(h_) {
    if (X < 2) throw std::invalid_argument("ThetaSumParams: X must be >= 2");
    if (h < 0 || static_cast<double>(h) > X)
      throw std::invalid_argument("ThetaSumParams: need 0 <= h <= X");
  }
};

// Literal term-by-term evaluation.
cplx gauss_sum_direct(i64 a, i64 b, i64 q);

// All b in [0, q) for fixed (a, q): the same literal sums sharing one root
// table, with the inner index updated incrementally.
std::vector<cplx> gauss_sum_direct_all_b(i64 a, i64 q);

// Closed-form evaluation via multiplicative splitting, the odd-modulus
// formula G(a,b;q) = e(-4bar*abar*b^2/q) (a/q) eps_q sqrt(q), and direct
// summation on the 2-power part. Requires gcd(a, q) = 1.
cplx gauss_sum_fast(i64 a, i64 b, i64 q);

// Unit list, inverse table and root table for a fixed Kloosterman modulus.
class KloostermanTable {
 public:
  explicit KloostermanTable(i64 c);
  cplx eval(i64 m, i64 n) const;
  i64 modulus() const { return c_; }
  const std::vector<i64>& units() const { return units_; }
  i64 inverse_of(i64 x) const { return inv_[static_cast<size_t>(x)]; }

 private:
  i64 c_;
  std::vector<i64> units_;
  std::vector<i64> inv_;
  UnitRoots roots_;
};

cplx kloosterman(i64 m, i64 n, i64 c);

// Legendre-twisted Kloosterman-type sum over the units mod an odd prime.
cplx salie(i64 m, i64 n, i64 p);

// r_ell(n): integer points on the sphere of radius sqrt(n) in Z^ell,
// by the recursion r_ell(n) = sum_{m^2 <= n} r_{ell-1}(n - m^2).
i64 sum_of_squares_count(i64 n, int ell);

// Table of r_ell(n) for 0 <= n <= X via iterated additive convolution with
// the squares indicator. Memory budget: ell * X <= 1e8.
std::vector<i64> sum_of_squares_table(i64 X, int ell);

// F(alpha) over |m| <= sqrt(X).
cplx theta_sum(double alpha, double X);

// G(alpha) = sum A(n+h) e(-alpha n) phi(n/X) over the support of phi.
cplx weighted_exp_sum(double alpha, const ThetaSumParams& params,
                      const CoefficientSequence& A, const TestFunction& phi);

}  // namespace shiftconv
