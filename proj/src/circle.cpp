#include "shiftconv/circle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace shiftconv {

std::vector<FareyArc> farey_dissection(i64 Q) {
  if (Q < 1) throw std::invalid_argument("farey_dissection: Q must be >= 1");
  std::vector<FareyArc> arcs;
  for (i64 q = 1; q <= Q; ++q) {
    for (i64 a = 1; a <= q; ++a) {
      if (gcd_i64(a, q) != 1) continue;
      FareyArc arc;
      arc.a = a;
      arc.q = q;
      if (q == 1) {
        arc.q_left = Q;
        arc.q_right = Q;
      } else {
        i64 abar = inv_mod(a, q);
        // unique residue of abar in (Q - q, Q]
        i64 ql = abar + ((Q - abar) / q) * q;
        if (ql > Q) ql -= q;
        while (ql <= Q - q) ql += q;
        i64 mr = q - abar;  // -abar mod q
        i64 qr = mr + ((Q - mr) / q) * q;
        if (qr > Q) qr -= q;
        while (qr <= Q - q) qr += q;
        arc.q_left = ql;
        arc.q_right = qr;
      }
      arc.center = Rat(a, q);
      arc.left = arc.center - Rat(1, q * (q + arc.q_left));
      arc.right = arc.center + Rat(1, q * (q + arc.q_right));
      arcs.push_back(arc);
    }
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const FareyArc& x, const FareyArc& y) { return x.center < y.center; });
  return arcs;
}

namespace {

// int_0^T e(beta u^2) du for T >= 0
cplx fresnel_partial(double T, double beta) {
  if (T <= 0) return {0.0, 0.0};
  if (beta == 0.0) return {T, 0.0};
  if (beta < 0) return std::conj(fresnel_partial(T, -beta));
  double cycles = beta * T * T;
  if (cycles <= 50.0) {
    int panels = static_cast<int>(std::ceil(3.0 * cycles)) + 2;
    return integrate_panels(
        [beta](double u) { return unit_phase(beta * u * u); }, 0.0, T, panels);
  }
  // half line minus tail; tail by repeated integration by parts
  cplx full = std::polar(1.0 / (2.0 * std::sqrt(2.0 * beta)), kPi / 4.0);
  long double phase = static_cast<long double>(beta) * T * T;
  cplx eict = unit_phase_l(phase);
  cplx two_ic = cplx(0.0, 2.0) * (kTwoPi * beta);
  cplx term = -eict / (two_ic * T);
  cplx tail = term;
  for (int k = 1; k < 40; ++k) {
    term *= static_cast<double>(2 * k - 1) / (two_ic * (T * T));
    tail += term;
    if (std::abs(term) < 1e-18 * (std::abs(tail) + std::abs(full))) break;
  }
  return full - tail;
}

// signed: int_0^T for any real T
cplx fresnel_signed(double T, double beta) {
  if (T >= 0) return fresnel_partial(T, beta);
  return -fresnel_partial(-T, beta);
}

}  // namespace

cplx gauss_fresnel_integral(double beta, double X) {
  if (X < 1) throw std::invalid_argument("gauss_fresnel_integral: X must be >= 1");
  return fresnel_partial(std::sqrt(X), beta);
}

cplx poisson_kernel(i64 b, i64 q, double beta, double X) {
  if (q < 1 || X < 1) throw std::invalid_argument("poisson_kernel: bad arguments");
  double sX = std::sqrt(X);
  double qd = static_cast<double>(q);
  // below this the quadratic phase moves the integrand by < 1e-9 and the
  // completed-square center b/(2 q beta) loses all precision
  if (std::abs(beta) * X < 1e-9) beta = 0.0;
  if (beta == 0.0) {
    if (b == 0) return {2.0 * sX / qd, 0.0};
    double bd = static_cast<double>(b);
    return {std::sin(kTwoPi * bd * sX / qd) / (kPi * bd), 0.0};
  }
  if (b == 0) return 2.0 / qd * fresnel_partial(sX, beta);
  // complete the square: beta t^2 - (b/q) t = beta (t - c)^2 - beta c^2
  double bd = static_cast<double>(b);
  double c = bd / (2.0 * qd * beta);
  long double theta = static_cast<long double>(bd) * bd /
                      (4.0L * static_cast<long double>(qd) * qd * beta);
  cplx shift = unit_phase_l(-theta);
  cplx val = fresnel_signed(sX - c, beta) - fresnel_signed(-sX - c, beta);
  return shift * val / qd;
}

namespace {

std::pair<i64, i64> side_range(i64 q) {
  // integers b with -3q/2 < b <= 3q/2
  i64 hi = (3 * q) / 2;
  i64 lo = -hi;
  if (2 * lo <= -3 * q) ++lo;
  return {lo, hi};
}

}  // namespace

double theta_decomposition_residual(i64 a, i64 q, double beta, double X) {
  if (X < 4) throw std::invalid_argument("theta_decomposition_residual: X too small");
  i64 Q = static_cast<i64>(5.0 * std::sqrt(X));
  if (q < 1 || q > Q) throw std::invalid_argument("theta_decomposition_residual: need q <= 5 sqrt X");
  if (gcd_i64(a, q) != 1) throw std::invalid_argument("theta_decomposition_residual: need (a,q)=1");
  if (std::abs(beta) > 1.0 / (static_cast<double>(q) * static_cast<double>(Q)) * (1 + 1e-12))
    throw std::invalid_argument("theta_decomposition_residual: need |beta| <= 1/(qQ)");
  double alpha = static_cast<double>(a) / static_cast<double>(q) + beta;
  cplx lhs = theta_sum(alpha, X);
  cplx main = 2.0 * gauss_sum_fast(a, 0, q) / static_cast<double>(q) *
              gauss_fresnel_integral(beta, X);
  auto [lo, hi] = side_range(q);
  KahanSum side;
  for (i64 b = lo; b <= hi; ++b) {
    if (b == 0) continue;
    side.add(gauss_sum_fast(a, b, q) * poisson_kernel(b, q, beta, X));
  }
  return std::abs(lhs - main - side.value());
}

double poisson_kernel_row_sum(i64 q, double beta, double X) {
  auto [lo, hi] = side_range(q);
  double s = 0;
  for (i64 b = lo; b <= hi; ++b) {
    if (b == 0) continue;
    s += std::abs(poisson_kernel(b, q, beta, X));
  }
  return s;
}

DecompositionSweepReport decomposition_residual_sweep(double X, int count, u64 seed,
                                                      std::ostream* records) {
  DecompositionSweepReport rep;
  rep.seed = seed;
  i64 Q = static_cast<i64>(5.0 * std::sqrt(X));
  Rng rng(seed);
  int done = 0;
  while (done < count) {
    i64 q = rng.uniform(1, Q);
    i64 a = rng.uniform(1, q);
    if (gcd_i64(a, q) != 1) continue;
    double bmax = 1.0 / (static_cast<double>(q) * static_cast<double>(Q));
    double beta = (done % 4 == 0)   ? bmax
                  : (done % 4 == 1) ? 0.0
                                    : (rng.real01() * 2.0 - 1.0) * bmax;
    double resid = theta_decomposition_residual(a, q, beta, X);
    double row = poisson_kernel_row_sum(q, beta, X);
    double lg = std::log(static_cast<double>(q) + 2.0);
    rep.residual_over_log_max = std::max(rep.residual_over_log_max, resid / lg);
    rep.rowsum_over_log_max = std::max(rep.rowsum_over_log_max, row / lg);
    if (records) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "a=%lld q=%lld beta=%.12g residual=%.12g rowsum=%.12g bound=%.12g\n",
                    static_cast<long long>(a), static_cast<long long>(q), beta, resid, row, lg);
      (*records) << buf;
    }
    ++done;
    ++rep.tuples;
  }
  return rep;
}

cplx circle_integral(i64 X, i64 h, const CoefficientSequence& A,
                     const TestFunction& phi, i64 N) {
  if (X < 2) throw std::invalid_argument("circle_integral: X must be >= 2");
  if (h < 0) throw std::invalid_argument("circle_integral: h must be >= 0");
  i64 Nreq = 4 * X + 2;
  if (N == 0) N = Nreq;
  if (N < Nreq)
    throw std::invalid_argument("circle_integral: N below the bandwidth bound 4X+2");

  i64 n_lo = X / 2, n_hi = X;
  if (!A.covers(n_lo + h, n_hi + h))
    throw std::out_of_range("circle_integral: coefficient range insufficient");
  std::vector<double> coeffs = A.values(n_lo + h, n_hi + h);
  std::vector<double> g(coeffs.size());
  for (i64 n = n_lo; n <= n_hi; ++n)
    g[static_cast<size_t>(n - n_lo)] =
        coeffs[static_cast<size_t>(n - n_lo)] *
        phi(static_cast<double>(n) / static_cast<double>(X));

  // roots of unity mod N
  std::vector<double> wr(static_cast<size_t>(N)), wi(static_cast<size_t>(N));
  for (i64 k = 0; k < N; ++k) {
    double t = kTwoPi * static_cast<double>(k) / static_cast<double>(N);
    wr[static_cast<size_t>(k)] = std::cos(t);
    wi[static_cast<size_t>(k)] = std::sin(t);
  }
  i64 M = static_cast<i64>(std::sqrt(static_cast<double>(X)));
  while (M * M > X) --M;
  while ((M + 1) * (M + 1) <= X) ++M;
  std::vector<i64> sq(static_cast<size_t>(M) + 1);
  for (i64 m = 0; m <= M; ++m) sq[static_cast<size_t>(m)] = (m * m) % N;

  long double acc_re = 0, acc_im = 0;
  for (i64 j = 0; j < N; ++j) {
    // F(j/N) = 1 + 2 sum_{m=1}^{M} w[j m^2 mod N]
    double fre = 0, fim = 0;
    for (i64 m = 1; m <= M; ++m) {
      i64 idx = static_cast<i64>(mul_mod(static_cast<u64>(j), static_cast<u64>(sq[static_cast<size_t>(m)]),
                                         static_cast<u64>(N)));
      fre += wr[static_cast<size_t>(idx)];
      fim += wi[static_cast<size_t>(idx)];
    }
    cplx f{1.0 + 2.0 * fre, 2.0 * fim};
    cplx f3 = f * f * f;
    // G(j/N) = sum_n g[n] e(-j n / N)
    i64 idx = static_cast<i64>(mul_mod(static_cast<u64>(j), static_cast<u64>(n_lo % N),
                                       static_cast<u64>(N)));
    double gre = 0, gim = 0;
    for (size_t k = 0; k < g.size(); ++k) {
      gre += g[k] * wr[static_cast<size_t>(idx)];
      gim -= g[k] * wi[static_cast<size_t>(idx)];
      idx += j;
      if (idx >= N) idx -= N;
    }
    cplx prod = f3 * cplx{gre, gim};
    acc_re += prod.real();
    acc_im += prod.imag();
  }
  return {static_cast<double>(acc_re / N), static_cast<double>(acc_im / N)};
}

}  // namespace shiftconv
