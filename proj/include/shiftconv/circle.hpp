// Farey dissection of order Q, the quadratic-phase (Fresnel) integrals
// behind the major-arc decomposition of the theta sum, and the exact
// recovery of the shifted convolution sum as the constant Fourier
// coefficient of F^3(alpha) G(alpha).
//
// The decomposition realized here comes from Poisson summation on the
// residue classes mod q:
//   F(a/q + beta) = sum_{b in Z} G(a,b;q) Psi(b,q,beta),
//   Psi(b,q,beta) = (1/q) int_{-sqrt X}^{sqrt X} e(beta t^2 - b t / q) dt,
// whose b = 0 term is (2 G(a,0;q)/q) Psi_0(beta). The residual measured
// below is the tail over |b| > 3q/2.
#pragma once

#include <iosfwd>

#include "shiftconv/coefficients.hpp"
#include "shiftconv/common.hpp"
#include "shiftconv/exp_sums.hpp"
#include "shiftconv/test_function.hpp"

namespace shiftconv {

struct FareyArc {
  i64 a = 1, q = 1;    // reduced fraction a/q, 1 <= a <= q
  i64 q_left = 1;      // left neighbor denominator:  a q_left  =  1 (mod q)
  i64 q_right = 1;     // right neighbor denominator: a q_right = -1 (mod q)
  Rat center, left, right;  // a/q and mediant endpoints
};

// All arcs of order Q sorted by center; consecutive fractions are recovered
// from the congruence characterization of the neighbor denominators. The
// sorted arcs abut exactly and cover an interval of length 1
// ([1/(Q+1), 1 + 1/(Q+1)], i.e. the unit circle).
std::vector<FareyArc> farey_dissection(i64 Q);

// Psi_0(beta) = int_0^{sqrt X} e(beta x^2) dx. Panel quadrature while the
// phase swing is small, closed half-line value minus an integration-by-
// parts tail series once |beta| X > 50.
cplx gauss_fresnel_integral(double beta, double X);

// Psi(b, q, beta) as above; for b = 0 equals 2 Psi_0(beta) / q.
cplx poisson_kernel(i64 b, i64 q, double beta, double X);

// | F(a/q+beta) - (2G(a,0;q)/q) Psi_0(beta)
//   - sum_{0 < |b|, -3q/2 < b <= 3q/2} G(a,b;q) Psi(b,q,beta) |
// Requires gcd(a,q)=1, q <= floor(5 sqrt X), |beta| <= 1/(q Q).
double theta_decomposition_residual(i64 a, i64 q, double beta, double X);

// sum over 0 < |b|, -3q/2 < b <= 3q/2 of |Psi(b,q,beta)|
double poisson_kernel_row_sum(i64 q, double beta, double X);

// Seeded sweep of the decomposition residual and kernel row sums over
// random (a, q, beta) with q <= floor(5 sqrt X); returns the measured
// maxima of residual/log(q+2) and rowsum/log(q+2). Optionally writes one
// delimited record per tuple.
struct DecompositionSweepReport {
  double residual_over_log_max = 0;
  double rowsum_over_log_max = 0;
  i64 tuples = 0;
  u64 seed = 0;
};
DecompositionSweepReport decomposition_residual_sweep(double X, int count, u64 seed,
                                                      std::ostream* records = nullptr);

// int_0^1 F^3(alpha) G(alpha) d alpha as the average of F^3 G over N >= 4X+2
// equally spaced points; exact up to roundoff since F^3 G is a trigonometric
// polynomial with frequencies in [-X, 3X]. Equals
// sum_n A(n+h) r_3(n) phi(n/X).
cplx circle_integral(i64 X, i64 h, const CoefficientSequence& A,
                     const TestFunction& phi, i64 N = 0);

}  // namespace shiftconv
