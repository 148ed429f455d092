// Hankel-type weight functions of the degree-3 Voronoi summation formula:
//
//   Phi_k(x) = int_{Re s = sigma} (pi^3 x)^{-s}
//              prod_j Gamma((1+s+mu_j+2k)/2) / Gamma((-s-mu_j)/2)
//              phitilde(-s-k) ds,                      k = 0, 1,
//   Phi+-(x) = Phi_0(x) +- Phi_1(x) / (i pi^3 x),
//
// evaluated two independent ways: numerically along the contour (trapezoid
// in t = Im s, spectrally accurate for these analytic superpolynomially
// decaying integrands), and through the stationary-phase expansion
//
//   Phi_k(x) ~ (pi^3 x)^{k+1} sum_j int phi(u)
//              [a_k(j) e(3(xu)^{1/3}) + b_k(j) e(-3(xu)^{1/3})]
//              (pi^3 x u)^{-j/3} du.
//
// The j = 1 constants follow from the saddle-point evaluation of the
// gamma-ratio kernel (saddle at s = 2 i (pi^3 x u)^{1/3}):
//   a_0(1) = -2 sqrt(3 pi)/3,  b_0(1) = +2 sqrt(3 pi)/3,
//   a_1(1) = b_1(1) = -(2 sqrt(3 pi)/3) i,
// and the j >= 2 constants are calibration outputs fit against the contour.
#pragma once

#include <map>

#include "shiftconv/bound_report.hpp"
#include "shiftconv/coefficients.hpp"
#include "shiftconv/common.hpp"
#include "shiftconv/test_function.hpp"

namespace shiftconv {

struct SpectralParams {
  cplx mu1{0, 0}, mu2{0, 0}, mu3{0, 0};

  static SpectralParams zero() { return {}; }
  static SpectralParams make(cplx m1, cplx m2) {
    SpectralParams s{m1, m2, -(m1 + m2)};
    s.validate();
    return s;
  }
  void validate() const {
    if (std::abs(mu1 + mu2 + mu3) > 1e-12)
      throw std::invalid_argument("SpectralParams: trace must vanish");
    for (cplx m : {mu1, mu2, mu3})
      if (std::abs(m.real()) > 0.5 - 0.1 + 1e-12)
        throw std::invalid_argument("SpectralParams: |Re mu_j| must be <= 2/5");
  }
};

struct ContourOptions {
  double dt = 0.05;        // trapezoid step in t
  double rel_tol = 1e-11;  // per-block stopping threshold
  double t_cap = 2.0e5;    // hard truncation cap before reporting failure
};

struct ContourDiagnostics {
  double t_used = 0;
  i64 nodes = 0;
  double tail_block_frac = 0;  // last block magnitude / result scale
};

// Contour evaluation of Phi_k. sigma must exceed max_j(-1 - Re mu_j - 2k).
cplx voronoi_weight_contour(double x, int k, const SpectralParams& mu,
                            double sigma, const Window& w,
                            const ContourOptions& opt = {},
                            ContourDiagnostics* diag = nullptr);

// (Phi+, Phi-) assembled from Phi_0, Phi_1 at one admissible sigma.
std::pair<cplx, cplx> voronoi_weight_pair(double x, const SpectralParams& mu,
                                          double sigma, const Window& w,
                                          const ContourOptions& opt = {});

struct AsymptoticConstants {
  // index [k][j-1], j = 1..terms()
  std::vector<cplx> a[2];
  std::vector<cplx> b[2];
  int terms() const { return static_cast<int>(a[0].size()); }
};

// j = 1 stationary-phase constants, higher entries zero.
AsymptoticConstants leading_constants(int terms);

// The expansion truncated at `ell` terms with the supplied constants.
cplx voronoi_weight_asymptotic(double x, int k, int ell, const Window& w,
                               const AsymptoticConstants& C);

// Basis integral (pi^3 x)^{k+1} int phi(u) e(sign*3(xu)^{1/3}) (pi^3 xu)^{-j/3} du.
cplx asymptotic_basis(double x, int k, int j, int sign, const Window& w);

// Least-squares fit of the expansion constants against contour values at
// the sample points xs. With pin_leading the j = 1 pair is fixed to
// leading_constants() and only j >= 2 are fit.
AsymptoticConstants calibrate_asymptotic(
    const std::function<cplx(double, int)>& contour_eval, const Window& w,
    const std::vector<double>& xs, int ell, bool pin_leading);

// ---------------------------------------------------------------------------
// Weighted dual-sum bound sweep: measures
//   sum_{n2 <= N2} (A(n2)/(n1 n2)) |Phi_beta^{+-}(n1^2 n2 / q^3)|
// against (1 + |beta| X)^2 over a beta grid, with the truncation taken from
// the negligibility threshold n1^2 n2 / q^3 * X < (1+|beta|X)^3.
// ---------------------------------------------------------------------------
struct PhiBetaReport {
  BoundReport<double> overall;  // argmax = beta
  std::vector<std::pair<double, double>> per_beta;
  i64 q = 1, n1 = 1;
  double X = 0;
};

PhiBetaReport phibeta_bound_sweep(i64 q, i64 n1, const std::vector<double>& betas,
                                  double X, i64 h, const TestFunction& phi,
                                  const CoefficientSequence& A);

// ---------------------------------------------------------------------------
// Double-indexed coefficient files and the summation-formula residual
// ---------------------------------------------------------------------------
struct GL3Coefficients {
  cplx mu1{0, 0}, mu2{0, 0};
  std::map<std::pair<i64, i64>, cplx> values;

  bool has(i64 m, i64 n) const { return values.count({m, n}) != 0; }
  cplx at(i64 m, i64 n) const;
};

// Format: header "# mu1_re=<v> mu1_im=<v> mu2_re=<v> mu2_im=<v>", then
// records "n1,n2,re,im". Parse errors carry line numbers.
GL3Coefficients load_gl3_coefficients(const std::string& path);
void write_gl3_coefficients(const std::string& path, const GL3Coefficients& c);

struct VoronoiResidualReport {
  cplx lhs, rhs;
  double residual = 0;       // |lhs - rhs_truncated|
  double tail_estimate = 0;  // extrapolated dual-sum truncation tail
  bool tail_certified = false;
  i64 truncation = 0;
};

// Diagnostic comparison of sum_n A(1,n) e(an/q) phi(n/X) against the
// truncated dual side; not an exactness test.
VoronoiResidualReport voronoi_residual(i64 a, i64 q, const GL3Coefficients& coeffs,
                                       const TestFunction& phi, double X,
                                       i64 n2_max);

}  // namespace shiftconv
