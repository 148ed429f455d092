#include "shiftconv/test_function.hpp"

#include <array>
#include <cmath>

namespace shiftconv {

namespace {

// g(x) = (x - 1/2)(1 - x); phi = exp(16 - 1/g) on (1/2, 1).
// w = 1/g satisfies w^(j) = -(j w^(j-1) g' + j(j-1)/2 w^(j-2) g'') / g.
constexpr int kMaxDeriv = 8;

double bump_value(double x) {
  if (x <= 0.5 || x >= 1.0) return 0.0;
  double g = (x - 0.5) * (1.0 - x);
  double u = 16.0 - 1.0 / g;
  if (u < -700.0) return 0.0;
  return std::exp(u);
}

long double bump_value_l(long double x) {
  if (x <= 0.5L || x >= 1.0L) return 0.0L;
  long double g = (x - 0.5L) * (1.0L - x);
  long double u = 16.0L - 1.0L / g;
  if (u < -11300.0L) return 0.0L;
  return std::exp(u);
}

double bump_derivative(double x, int j) {
  if (j == 0) return bump_value(x);
  if (x <= 0.5 || x >= 1.0) return 0.0;
  double g = (x - 0.5) * (1.0 - x);
  double u0 = 16.0 - 1.0 / g;
  if (u0 < -680.0) return 0.0;  // phi and all its derivatives vanish to this depth
  double gp = -2.0 * x + 1.5;
  double gpp = -2.0;

  std::array<double, kMaxDeriv + 2> w{};  // w[k] = (1/g)^(k)
  w[0] = 1.0 / g;
  for (int k = 1; k <= j; ++k) {
    double t = k * w[k - 1] * gp;
    if (k >= 2) t += 0.5 * k * (k - 1) * w[k - 2] * gpp;
    w[k] = -t / g;
  }
  // u = 16 - w  =>  u^(k) = -w[k] for k >= 1
  std::array<double, kMaxDeriv + 2> phi{};
  phi[0] = std::exp(u0);
  // phi^(m+1) = sum_k C(m,k) u^(k+1) phi^(m-k)
  for (int m = 0; m < j; ++m) {
    double s = 0;
    double binom = 1.0;
    for (int k = 0; k <= m; ++k) {
      s += binom * (-w[k + 1]) * phi[m - k];
      binom = binom * (m - k) / (k + 1.0);
    }
    phi[m + 1] = s;
  }
  return phi[j];
}

}  // namespace

TestFunction TestFunction::canonical_bump() { return TestFunction(0.5, 1.0); }

double TestFunction::operator()(double x) const { return bump_value(x); }

double TestFunction::derivative(double x, int j) const {
  if (j < 0 || j > kMaxDeriv)
    throw std::invalid_argument("TestFunction: derivative order must be in [0, 8]");
  return bump_derivative(x, j);
}

double TestFunction::deriv_profile() const {
  if (profile_ > 0) return profile_;
  double best = 1.0;
  const int grid = 4001;
  for (int j = 1; j <= kMaxDeriv; ++j) {
    double mx = 0;
    for (int i = 1; i < grid; ++i) {
      double x = lo_ + (hi_ - lo_) * i / grid;
      mx = std::max(mx, std::abs(bump_derivative(x, j)));
    }
    best = std::max(best, std::pow(mx, 1.0 / j));
  }
  profile_ = best;
  return best;
}

cplx TestFunction::mellin(cplx s) const {
  Window w;
  w.lo = lo_;
  w.hi = hi_;
  w.real_valued = true;
  w.osc_cycles = 0;
  w.eval = [](double x) { return cplx(bump_value(x), 0.0); };
  return mellin_transform(w, s);
}

Window scaled_window(const TestFunction& phi, double X) {
  Window w;
  w.lo = phi.support_lo() * X;
  w.hi = phi.support_hi() * X;
  w.real_valued = true;
  w.osc_cycles = 0;
  w.eval = [X](double u) { return cplx(bump_value(u / X), 0.0); };
  w.eval_l = [X](long double u) {
    return std::complex<long double>(bump_value_l(u / static_cast<long double>(X)), 0.0L);
  };
  return w;
}

Window twisted_window(const TestFunction& phi, double X, double h, double beta) {
  Window w;
  w.lo = h + phi.support_lo() * X;
  w.hi = h + phi.support_hi() * X;
  w.real_valued = (beta == 0.0);
  w.osc_cycles = std::abs(beta) * (w.hi - w.lo);
  w.eval = [X, h, beta](double u) {
    double v = bump_value((u - h) / X);
    if (v == 0.0) return cplx(0.0, 0.0);
    return v * unit_phase(-beta * u);
  };
  w.eval_l = [X, h, beta](long double u) {
    long double v = bump_value_l((u - static_cast<long double>(h)) / static_cast<long double>(X));
    if (v == 0.0L) return std::complex<long double>(0.0L, 0.0L);
    long double t = -static_cast<long double>(beta) * u;
    t -= std::floor(t + 0.5L);
    long double ang = 2.0L * 3.14159265358979323846264338327950288L * t;
    return std::complex<long double>(v * std::cos(ang), v * std::sin(ang));
  };
  return w;
}

cplx mellin_transform(const Window& w, cplx s, double rel_tol) {
  // u^{s-1} contributes |Im s| * log(hi/lo) / (2 pi) cycles over the support
  double cycles = std::abs(s.imag()) * std::log(w.hi / w.lo) / kTwoPi + w.osc_cycles;
  int panels = static_cast<int>(std::ceil(cycles * 2.5)) + 4;
  auto f = [&](double u) { return w.eval(u) * std::exp((s - 1.0) * std::log(u)); };
  // absolute accuracy floor: roundoff against the magnitude integral
  cplx mag = integrate_panels([&](double u) { return cplx(std::abs(f(u)), 0.0); },
                              w.lo, w.hi, panels);
  double floor_abs = 1e-15 * mag.real() + 1e-300;
  cplx prev = integrate_panels(f, w.lo, w.hi, panels);
  double diff = 0;
  for (int it = 0; it < 12; ++it) {
    panels *= 2;
    cplx cur = integrate_panels(f, w.lo, w.hi, panels);
    diff = std::abs(cur - prev);
    if (diff <= rel_tol * std::abs(cur) + floor_abs) return cur;
    prev = cur;
  }
  if (diff > 1e-6 * std::abs(prev) + floor_abs)
    throw std::runtime_error("mellin_transform: quadrature did not converge");
  return prev;
}

}  // namespace shiftconv
