#include "shiftconv/voronoi_phi.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "shiftconv/arith.hpp"
#include "shiftconv/exp_sums.hpp"

namespace shiftconv {

namespace {

bool conjugation_closed(const SpectralParams& mu) {
  std::array<cplx, 3> ms{mu.mu1, mu.mu2, mu.mu3};
  for (cplx m : ms) {
    bool found = false;
    for (cplx n : ms)
      if (std::abs(std::conj(m) - n) < 1e-14) found = true;
    if (!found) return false;
  }
  return true;
}

// Mellin samples of the window along v = log u: phitilde(r0 - i t) =
// dv * sum_m g_m e^{-i t v_m} with g(v) = f(e^v) e^{r0 v}. The window
// vanishes to all orders at both ends, so the trapezoid sum is spectrally
// accurate once e^{-i t v} is resolved.
// Long-double throughout: the g-sample roundoff is the accuracy floor of
// the whole contour once the gamma ratio amplifies the tail nodes.
struct MellinLine {
  using lcplx = std::complex<long double>;
  long double vlo, vhi, dv;
  long double mag = 0;  // integral of |g|; sets the roundoff floor
  std::vector<lcplx> g;

  MellinLine(const Window& w, double r0, double t_max) {
    vlo = std::log(static_cast<long double>(w.lo));
    vhi = std::log(static_cast<long double>(w.hi));
    double cycles = static_cast<double>(vhi - vlo) * t_max / kTwoPi + w.osc_cycles;
    i64 m = 128 + static_cast<i64>(std::ceil(cycles * 14.0));
    if (m > (1 << 21)) throw std::runtime_error("voronoi contour: mellin grid too large");
    g.resize(static_cast<size_t>(m));
    dv = (vhi - vlo) / static_cast<long double>(m - 1);
    for (i64 i = 0; i < m; ++i) {
      long double v = vlo + dv * static_cast<long double>(i);
      lcplx val;
      if (w.eval_l) {
        val = w.eval_l(std::exp(v));
      } else {
        cplx vd = w.eval(static_cast<double>(std::exp(v)));
        val = lcplx(vd.real(), vd.imag());
      }
      lcplx gv = val * std::exp(static_cast<long double>(r0) * v);
      g[static_cast<size_t>(i)] = gv;
      mag += std::abs(gv) * dv;
    }
  }

  // phitilde(r0 - i t), with rotors advanced externally
  cplx eval_with(const std::vector<lcplx>& rot) const {
    lcplx acc = 0;
    for (size_t i = 0; i < g.size(); ++i) acc += g[i] * rot[i];
    acc *= dv;
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
};

struct GammaRatio {
  // prod_j Gamma((1+s+mu_j+2k)/2) / Gamma((-s-mu_j)/2)
  std::array<cplx, 3> mus;
  int k;
  cplx operator()(cplx s) const {
    cplx lg = 0;
    for (cplx m : mus)
      lg += log_gamma((1.0 + s + m + 2.0 * static_cast<double>(k)) / 2.0) -
            log_gamma((-s - m) / 2.0);
    return std::exp(lg);
  }
};

}  // namespace

cplx voronoi_weight_contour(double x, int k, const SpectralParams& mu,
                            double sigma, const Window& w,
                            const ContourOptions& opt, ContourDiagnostics* diag) {
  if (x <= 0) throw std::invalid_argument("voronoi_weight_contour: x must be positive");
  if (k != 0 && k != 1) throw std::invalid_argument("voronoi_weight_contour: k in {0,1}");
  mu.validate();
  double sigma_min = -1e9;
  for (cplx m : {mu.mu1, mu.mu2, mu.mu3})
    sigma_min = std::max(sigma_min, -1.0 - m.real() - 2.0 * k);
  if (sigma <= sigma_min + 1e-9)
    throw std::invalid_argument("voronoi_weight_contour: sigma below the admissible line");

  GammaRatio gr{{mu.mu1, mu.mu2, mu.mu3}, k};
  const double L = std::log(kPi * kPi * kPi * x);
  const double r0 = -sigma - static_cast<double>(k);
  // saddle of the oscillatory regime sits near t* = 2 (pi^3 x u)^{1/3}
  double t_star = 2.0 * std::cbrt(kPi * kPi * kPi * x * w.hi);
  bool half_range = w.real_valued && conjugation_closed(mu);

  double t_max = std::max(720.0, 3.0 * t_star);
  for (;; t_max *= 2.0) {
    if (t_max > opt.t_cap)
      throw std::runtime_error("voronoi_weight_contour: truncation did not converge");
    MellinLine ml(w, r0, t_max);
    const double dt = opt.dt;
    size_t M = ml.g.size();
    std::vector<MellinLine::lcplx> rot(M), step(M);
    for (size_t i = 0; i < M; ++i) {
      long double v = ml.vlo + ml.dv * static_cast<long double>(i);
      rot[i] = 1.0L;
      step[i] = std::polar(1.0L, -static_cast<long double>(dt) * v);
    }
    double gmag = 0;   // |(pi^3 x)^{-s} gamma-ratio| at the current node
    double mmagn = 0;  // |phitilde| at the current node
    auto kern = [&](double t, const std::vector<MellinLine::lcplx>& rotors, bool conj_rot) {
      cplx s{sigma, t};
      cplx mell;
      if (!conj_rot) {
        mell = ml.eval_with(rotors);
      } else {
        MellinLine::lcplx acc = 0;
        for (size_t i = 0; i < M; ++i) acc += ml.g[i] * std::conj(rotors[i]);
        acc *= ml.dv;
        mell = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
      }
      cplx front = std::exp(-s * L) * gr(s);
      gmag = std::abs(front);
      mmagn = std::abs(mell);
      return front * mell;
    };

    KahanSum acc;
    double peak = 0;
    int quiet_blocks = 0;
    const int block_nodes = 256;
    cplx k0 = kern(0.0, rot, false);
    acc.add(half_range ? cplx(k0.real(), 0.0) : k0);
    bool converged = false;
    double t = 0;
    for (i64 block = 0; !converged; ++block) {
      KahanSum bacc;
      double bnoise = 0;      // roundoff floor of this block's contribution
      double peak_mell = 0;   // largest |phitilde| seen in this block
      for (int j = 0; j < block_nodes; ++j) {
        t += dt;
        if (t > t_max) break;
        for (size_t i = 0; i < M; ++i) rot[i] *= step[i];
        if (half_range) {
          cplx kp = kern(t, rot, false);
          bacc.add(2.0 * kp.real());
          bnoise += 2e-19 * static_cast<double>(ml.mag) * gmag;
        } else {
          bacc.add(kern(t, rot, false));
          bnoise += 1e-19 * static_cast<double>(ml.mag) * gmag;
          bacc.add(kern(-t, rot, true));
          bnoise += 1e-19 * static_cast<double>(ml.mag) * gmag;
        }
        peak_mell = std::max(peak_mell, mmagn);
      }
      cplx bv = bacc.value();
      acc.add(bv);
      peak = std::max(peak, std::abs(bv));
      double ref = std::max(std::abs(acc.value()), 1e-6 * peak);
      bool quiet = std::abs(bv) < opt.rel_tol * ref;
      bool at_noise_floor = std::abs(bv) <= 4.0 * bnoise;
      // once phitilde itself is below its representable floor the remaining
      // nodes carry amplified roundoff only
      bool signal_floor = peak_mell < 4e-19 * static_cast<double>(ml.mag);
      if ((quiet || at_noise_floor || signal_floor) && t > 1.3 * t_star)
        ++quiet_blocks;
      else
        quiet_blocks = 0;
      if (quiet_blocks >= 3) {
        converged = true;
        if (diag) {
          diag->t_used = t;
          diag->nodes = static_cast<i64>(t / dt);
          diag->tail_block_frac = std::abs(bv) / std::max(ref, 1e-300);
        }
      }
      if (t > t_max) break;
    }
    if (!converged) continue;  // retry with a longer contour
    // plain ds along Re s = sigma: ds = i dt
    return cplx(0.0, 1.0) * acc.value() * dt;
  }
}

std::pair<cplx, cplx> voronoi_weight_pair(double x, const SpectralParams& mu,
                                          double sigma, const Window& w,
                                          const ContourOptions& opt) {
  cplx p0 = voronoi_weight_contour(x, 0, mu, sigma, w, opt);
  cplx p1 = voronoi_weight_contour(x, 1, mu, sigma, w, opt);
  cplx corr = p1 / (cplx(0.0, 1.0) * kPi * kPi * kPi * x);
  return {p0 + corr, p0 - corr};
}

AsymptoticConstants leading_constants(int terms) {
  AsymptoticConstants c;
  double c0 = 2.0 * std::sqrt(3.0 * kPi) / 3.0;
  for (int k = 0; k < 2; ++k) {
    c.a[k].assign(static_cast<size_t>(terms), cplx(0, 0));
    c.b[k].assign(static_cast<size_t>(terms), cplx(0, 0));
  }
  c.a[0][0] = cplx(-c0, 0.0);
  c.b[0][0] = cplx(c0, 0.0);
  c.a[1][0] = cplx(0.0, -c0);
  c.b[1][0] = cplx(0.0, -c0);
  return c;
}

cplx asymptotic_basis(double x, int k, int j, int sign, const Window& w) {
  double p3x = kPi * kPi * kPi * x;
  double cycles = 3.0 * std::cbrt(x) * std::abs(std::cbrt(w.hi) - std::cbrt(w.lo)) +
                  w.osc_cycles;
  cplx integral = integrate_oscillatory(
      [&](double u) {
        return w.eval(u) * unit_phase(sign * 3.0 * std::cbrt(x * u)) *
               std::pow(p3x * u, -static_cast<double>(j) / 3.0);
      },
      w.lo, w.hi, cycles);
  return std::pow(p3x, k + 1) * integral;
}

cplx voronoi_weight_asymptotic(double x, int k, int ell, const Window& w,
                               const AsymptoticConstants& C) {
  if (x <= 0) throw std::invalid_argument("voronoi_weight_asymptotic: x must be positive");
  if (ell < 1 || ell > C.terms())
    throw std::invalid_argument("voronoi_weight_asymptotic: term count out of range");
  if (x * w.hi < 10.0)
    throw std::invalid_argument("voronoi_weight_asymptotic: outside the oscillatory regime");
  cplx total = 0;
  for (int j = 1; j <= ell; ++j) {
    total += C.a[k][static_cast<size_t>(j - 1)] * asymptotic_basis(x, k, j, +1, w);
    total += C.b[k][static_cast<size_t>(j - 1)] * asymptotic_basis(x, k, j, -1, w);
  }
  return total;
}

namespace {

// complex least squares via normal equations
std::vector<cplx> solve_lsq(const std::vector<std::vector<cplx>>& cols,
                            const std::vector<cplx>& y) {
  size_t n = cols.size();
  std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      cplx s = 0;
      for (size_t r = 0; r < y.size(); ++r) s += std::conj(cols[i][r]) * cols[j][r];
      m[i][j] = s;
    }
    cplx s = 0;
    for (size_t r = 0; r < y.size(); ++r) s += std::conj(cols[i][r]) * y[r];
    m[i][n] = s;
  }
  // Gaussian elimination with partial pivoting
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    std::swap(m[c], m[piv]);
    if (std::abs(m[c][c]) < 1e-300) throw std::runtime_error("calibrate: singular normal matrix");
    for (size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      cplx f = m[r][c] / m[c][c];
      for (size_t cc = c; cc <= n; ++cc) m[r][cc] -= f * m[c][cc];
    }
  }
  std::vector<cplx> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = m[i][n] / m[i][i];
  return out;
}

}  // namespace

AsymptoticConstants calibrate_asymptotic(
    const std::function<cplx(double, int)>& contour_eval, const Window& w,
    const std::vector<double>& xs, int ell, bool pin_leading) {
  AsymptoticConstants out = leading_constants(ell);
  for (int k = 0; k < 2; ++k) {
    int j0 = pin_leading ? 2 : 1;
    int nfit = ell - j0 + 1;
    if (nfit <= 0) continue;
    std::vector<std::vector<cplx>> cols(static_cast<size_t>(2 * nfit),
                                        std::vector<cplx>(xs.size()));
    std::vector<cplx> y(xs.size());
    for (size_t r = 0; r < xs.size(); ++r) {
      cplx target = contour_eval(xs[r], k);
      if (pin_leading) {
        target -= out.a[k][0] * asymptotic_basis(xs[r], k, 1, +1, w);
        target -= out.b[k][0] * asymptotic_basis(xs[r], k, 1, -1, w);
      }
      y[r] = target;
      for (int j = j0; j <= ell; ++j) {
        cols[static_cast<size_t>(2 * (j - j0))][r] = asymptotic_basis(xs[r], k, j, +1, w);
        cols[static_cast<size_t>(2 * (j - j0) + 1)][r] = asymptotic_basis(xs[r], k, j, -1, w);
      }
    }
    std::vector<cplx> z = solve_lsq(cols, y);
    for (int j = j0; j <= ell; ++j) {
      out.a[k][static_cast<size_t>(j - 1)] = z[static_cast<size_t>(2 * (j - j0))];
      out.b[k][static_cast<size_t>(j - 1)] = z[static_cast<size_t>(2 * (j - j0) + 1)];
    }
  }
  return out;
}

GL3Coefficients load_gl3_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("gl3 load: cannot open " + path);
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw std::runtime_error("gl3 load: empty file");
  ++lineno;
  double m1r, m1i, m2r, m2i;
  if (std::sscanf(line.c_str(), "# mu1_re=%lf mu1_im=%lf mu2_re=%lf mu2_im=%lf",
                  &m1r, &m1i, &m2r, &m2i) != 4)
    throw std::runtime_error("gl3 load: line 1: expected mu header");
  GL3Coefficients out;
  out.mu1 = {m1r, m1i};
  out.mu2 = {m2r, m2i};
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    long long n1, n2;
    double re, im;
    if (std::sscanf(line.c_str(), "%lld,%lld,%lf,%lf", &n1, &n2, &re, &im) != 4)
      throw std::runtime_error("gl3 load: line " + std::to_string(lineno) +
                               ": expected 'n1,n2,re,im'");
    if (!std::isfinite(re) || !std::isfinite(im))
      throw std::runtime_error("gl3 load: line " + std::to_string(lineno) + ": non-finite value");
    out.values[{n1, n2}] = {re, im};
  }
  return out;
}

void write_gl3_coefficients(const std::string& path, const GL3Coefficients& c) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("gl3 write: cannot open " + path);
  char buf[160];
  std::snprintf(buf, sizeof buf, "# mu1_re=%.17g mu1_im=%.17g mu2_re=%.17g mu2_im=%.17g\n",
                c.mu1.real(), c.mu1.imag(), c.mu2.real(), c.mu2.imag());
  out << buf;
  for (const auto& [key, val] : c.values) {
    std::snprintf(buf, sizeof buf, "%" PRId64 ",%" PRId64 ",%.17g,%.17g\n", key.first,
                  key.second, val.real(), val.imag());
    out << buf;
  }
}

cplx GL3Coefficients::at(i64 m, i64 n) const {
  auto it = values.find({m, n});
  if (it == values.end())
    throw std::out_of_range("GL3Coefficients: missing (" + std::to_string(m) + "," +
                            std::to_string(n) + ")");
  return it->second;
}

PhiBetaReport phibeta_bound_sweep(i64 q, i64 n1, const std::vector<double>& betas,
                                  double X, i64 h, const TestFunction& phi,
                                  const CoefficientSequence& A) {
  if (q < 1 || n1 < 1 || X < 4) throw std::invalid_argument("phibeta_bound_sweep: bad arguments");
  PhiBetaReport rep;
  rep.q = q;
  rep.n1 = n1;
  rep.X = X;
  rep.overall.bound_formula = "(1 + |beta| X)^2";
  SpectralParams mu = SpectralParams::zero();
  double q3 = std::pow(static_cast<double>(q), 3.0);
  for (double beta : betas) {
    Window w = twisted_window(phi, X, static_cast<double>(h), beta);
    double thresh = (1.0 + std::abs(beta) * X);
    double n2_cap = 2.0 * q3 * thresh * thresh * thresh /
                    (static_cast<double>(n1) * static_cast<double>(n1) * X);
    i64 n2_max = std::max<i64>(1, std::min<i64>(static_cast<i64>(n2_cap), 40));
    double sum_plus = 0, sum_minus = 0;
    for (i64 n2 = 1; n2 <= n2_max; ++n2) {
      double x = static_cast<double>(n1) * static_cast<double>(n1) *
                 static_cast<double>(n2) / q3;
      auto [pp, pm] = voronoi_weight_pair(x, mu, 1.25, w);
      double wgt = std::abs(A.at(n2)) / (static_cast<double>(n1) * static_cast<double>(n2));
      sum_plus += wgt * std::abs(pp);
      sum_minus += wgt * std::abs(pm);
    }
    double ratio = std::max(sum_plus, sum_minus) / (thresh * thresh);
    rep.per_beta.push_back({beta, ratio});
    rep.overall.consider(ratio, beta);
  }
  return rep;
}

VoronoiResidualReport voronoi_residual(i64 a, i64 q, const GL3Coefficients& coeffs,
                                       const TestFunction& phi, double X,
                                       i64 n2_max) {
  if (q < 1 || gcd_i64(a, q) != 1)
    throw std::invalid_argument("voronoi_residual: need (a,q)=1, q >= 1");
  SpectralParams mu = SpectralParams::make(coeffs.mu1, coeffs.mu2);
  Window w = scaled_window(phi, X);
  i64 lo = static_cast<i64>(std::ceil(w.lo));
  i64 hi = static_cast<i64>(std::floor(w.hi));
  // left side
  KahanSum lhs;
  UnitRoots roots(q);
  for (i64 n = lo; n <= hi; ++n) {
    if (!coeffs.has(1, n))
      throw std::out_of_range("voronoi_residual: insufficient coefficient range (need A(1," +
                              std::to_string(n) + "))");
    double wv = phi(static_cast<double>(n) / X);
    if (wv == 0) continue;
    lhs.add(coeffs.at(1, n) * wv * roots.at(a * (n % q)));
  }
  // dual side; one truncation-tail extrapolation per n1 block
  i64 abar = q == 1 ? 0 : inv_mod(a, q);
  cplx prefactor = static_cast<double>(q) * std::pow(kPi, -2.5) / cplx(0.0, 4.0);
  KahanSum rhs;
  VoronoiResidualReport rep;
  rep.tail_certified = true;
  for (u64 n1u : divisors(static_cast<u64>(q))) {
    i64 n1 = static_cast<i64>(n1u);
    KloostermanTable kt(q / n1);
    // geometric extrapolation from the trailing quarter of the block
    double tail_win_max = 0, tail_prev_max = 0;
    i64 quarter = std::max<i64>(2, n2_max / 4);
    for (i64 n2 = 1; n2 <= n2_max; ++n2) {
      double x = static_cast<double>(n1) * static_cast<double>(n1) *
                 static_cast<double>(n2) / std::pow(static_cast<double>(q), 3.0);
      auto [pp, pm] = voronoi_weight_pair(x, mu, 1.25, w);
      cplx term = 0;
      if (coeffs.has(n2, n1))
        term += coeffs.at(n2, n1) / static_cast<double>(n1 * n2) * kt.eval(abar, n2) * pp;
      if (coeffs.has(n1, n2))
        term += coeffs.at(n1, n2) / static_cast<double>(n1 * n2) * kt.eval(abar, -n2) * pm;
      rhs.add(prefactor * term);
      double mag = std::abs(prefactor * term);
      if (n2 > n2_max - quarter)
        tail_win_max = std::max(tail_win_max, mag);
      else if (n2 > n2_max - 2 * quarter)
        tail_prev_max = std::max(tail_prev_max, mag);
    }
    if (tail_prev_max > 0 && tail_win_max < 0.9 * tail_prev_max) {
      double rho = std::pow(tail_win_max / tail_prev_max, 1.0 / static_cast<double>(quarter));
      rep.tail_estimate += tail_win_max * rho / (1.0 - rho) * static_cast<double>(quarter);
    } else {
      rep.tail_estimate += tail_win_max * static_cast<double>(n2_max);
      rep.tail_certified = false;
    }
  }
  rep.lhs = lhs.value();
  rep.rhs = rhs.value();
  rep.residual = std::abs(rep.lhs - rep.rhs);
  rep.truncation = n2_max;
  return rep;
}

}  // namespace shiftconv
