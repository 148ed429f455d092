#include "shiftconv/common.hpp"

#include <algorithm>
#include <atomic>

namespace shiftconv {

int default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

void parallel_for(i64 n, int threads, const std::function<void(i64)>& fn) {
  if (n <= 0) return;
  if (threads < 1) threads = 1;
  if (static_cast<i64>(threads) > n) threads = static_cast<int>(n);
  if (threads <= 1 || n == 1) {
    for (i64 i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<i64> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        i64 i = next.fetch_add(1);
        if (i >= n) break;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Gauss-Legendre 16: nodes found once by Newton iteration on P_16.
// ---------------------------------------------------------------------------
namespace {

struct Gl16 {
  std::vector<double> x, w;
  Gl16() {
    const int n = 16;
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      // Chebyshev initial guess, then Newton on P_n.
      double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        double dx = p1 / dp;
        xi -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      double p0 = 1.0, p1 = xi;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      x[static_cast<size_t>(n - 1 - i)] = xi;
      w[static_cast<size_t>(n - 1 - i)] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }
};

const Gl16& gl16() {
  static const Gl16 g;
  return g;
}

}  // namespace

const std::vector<double>& gl16_nodes() { return gl16().x; }
const std::vector<double>& gl16_weights() { return gl16().w; }

cplx integrate_panels(const std::function<cplx(double)>& f, double a, double b,
                      int panels) {
  if (panels < 1) panels = 1;
  const auto& xs = gl16_nodes();
  const auto& ws = gl16_weights();
  KahanSum acc;
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    double mid = lo + 0.5 * h;
    double half = 0.5 * h;
    for (size_t k = 0; k < xs.size(); ++k)
      acc.add(f(mid + half * xs[k]) * (ws[k] * half));
  }
  return acc.value();
}

cplx integrate_oscillatory(const std::function<cplx(double)>& f, double a,
                           double b, double cycles) {
  int panels = static_cast<int>(std::ceil(std::abs(cycles) * 2.5)) + 2;
  if (panels > 2'000'000) throw std::runtime_error("integrate_oscillatory: panel budget exceeded");
  return integrate_panels(f, a, b, panels);
}

// ---------------------------------------------------------------------------
// Complex log-gamma
// ---------------------------------------------------------------------------
namespace {

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosC[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

cplx log_gamma_main(cplx z) {
  // valid for Re z >= 1/2
  cplx zz = z - 1.0;
  cplx s = kLanczosC[0];
  for (int k = 1; k < 15; ++k) s += kLanczosC[k] / (zz + static_cast<double>(k));
  cplx base = zz + kLanczosG + 0.5;
  return 0.5 * std::log(kTwoPi) + (zz + 0.5) * std::log(base) - base + std::log(s);
}

// log(sin(pi z)) up to an additive multiple of 2*pi*i, overflow-safe.
cplx log_sin_pi(cplx z) {
  if (z.imag() >= 0) {
    // sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2 i); |e^{2 i pi z}| < 1
    cplx iz = cplx(0.0, kPi) * z;
    return -iz + std::log(1.0 - std::exp(2.0 * iz)) + cplx(-std::log(2.0), kPi / 2.0);
  }
  cplx conj_val = log_sin_pi(std::conj(z));
  return std::conj(conj_val);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() >= 0.5) return log_gamma_main(z);
  // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
  return std::log(kPi) - log_sin_pi(z) - log_gamma_main(1.0 - z);
}

// ---------------------------------------------------------------------------
// Rat
// ---------------------------------------------------------------------------
namespace {
i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}
}  // namespace

void Rat::normalize() {
  if (den == 0) throw std::invalid_argument("Rat: zero denominator");
  if (den < 0) {
    den = -den;
    num = -num;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string to_string(const Rat& r) {
  auto i128_str = [](i128 v) {
    if (v == 0) return std::string("0");
    bool neg = v < 0;
    u128 x = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
    std::string s;
    while (x) {
      s += static_cast<char>('0' + static_cast<int>(x % 10));
      x /= 10;
    }
    if (neg) s += '-';
    std::reverse(s.begin(), s.end());
    return s;
  };
  return i128_str(r.num) + "/" + i128_str(r.den);
}

}  // namespace shiftconv
