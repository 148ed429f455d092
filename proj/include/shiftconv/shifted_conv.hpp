// Top-level drivers: the direct shifted convolution sum
//   S_h(X) = sum_n A(n+h) r_3(n) phi(n/X),
// the triple-divisor main term
//   4 C_2 I_0 X^{3/2} + 4 C_1 I_1 X^{3/2} + 2 C_0 I_2 X^{3/2}
// with the singular-series constants
//   C_l(h) = sum_q q^{-5} sum_{n|q} n tau(n) P_l(n,q)
//            sum_{a mod q}* e(ah/q) G(a,0;q)^3 S(-abar, 0; q/n)
// and archimedean integrals
//   I_l = int_R (int phi(u/X) e(-beta u) log^l(u+h) du)
//               (int_0^1 e(beta X v^2) dv)^3 dbeta,
// plus the sphere-count check and growth-exponent diagnostics.
#pragma once

#include <array>

#include "shiftconv/coefficients.hpp"
#include "shiftconv/common.hpp"
#include "shiftconv/test_function.hpp"

namespace shiftconv {

double shifted_convolution_direct(i64 X, i64 h, const CoefficientSequence& A,
                                  const TestFunction& phi);

struct SeriesConstant {
  double value = 0;
  double tail_estimate = 0;   // majorant mass beyond the truncation
  double even_q_share = 0;    // sum of |terms| over even q (flagged, see report)
  double imag_residue = 0;    // |Im| accumulated; the series is real
  i64 q_trunc = 0;
};

SeriesConstant singular_series_constant(i64 h, int ell, i64 q_trunc);
// all of l = 0, 1, 2 sharing one pass over q
std::array<SeriesConstant, 3> singular_series_all(i64 h, i64 q_trunc);

// P_l(n, q): the log-polynomial weights of the series terms
double mainterm_log_poly(int ell, i64 n, i64 q);

struct ArchimedeanIntegral {
  double value = 0;
  double error_estimate = 0;  // quadrature tail + mesh-refinement delta
};

ArchimedeanIntegral archimedean_integral(double X, i64 h, int ell,
                                         const TestFunction& phi);

struct MainTermReport {
  i64 X = 0, h = 0;
  double direct = 0;
  double main_term = 0;
  std::array<SeriesConstant, 3> constants;
  std::array<ArchimedeanIntegral, 3> integrals;
  double relative_error = 0;  // |direct - main| / max(|direct|, 1)
};

std::vector<MainTermReport> main_term_comparison(const std::vector<i64>& X_list,
                                                 i64 h, const TestFunction& phi,
                                                 i64 q_trunc);

struct SphereCountResult {
  i64 X = 0;
  i64 lattice_count = 0;  // sum_{n <= X} r_3(n), exact
  double smooth_term = 0;  // (4 pi / 3) X^{3/2}
  double error_exponent = 0;  // log|count - smooth| / log X
};

SphereCountResult sphere_count_check(i64 X);

struct TrendFit {
  double slope = 0;
  double intercept = 0;
  double residual_rms = 0;
  size_t points = 0;
  bool degenerate = false;
};

TrendFit fit_loglog(const std::vector<std::pair<double, double>>& xy);

TrendFit growth_exponent_fit(const std::vector<i64>& X_list, i64 h,
                             const CoefficientSequence& A,
                             const TestFunction& phi);

}  // namespace shiftconv
