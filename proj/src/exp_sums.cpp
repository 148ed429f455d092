#include "shiftconv/exp_sums.hpp"

#include <cmath>

namespace shiftconv {

namespace {

i64 reduce_mod(i64 a, i64 q) {
  i64 r = a % q;
  return r < 0 ? r + q : r;
}

}  // namespace

cplx gauss_sum_direct(i64 a, i64 b, i64 q) {
  if (q < 1) throw std::invalid_argument("gauss_sum_direct: q must be positive");
  if (q == 1) return {1.0, 0.0};
  UnitRoots roots(q);
  u64 au = static_cast<u64>(reduce_mod(a, q));
  u64 bu = static_cast<u64>(reduce_mod(b, q));
  u64 qu = static_cast<u64>(q);
  KahanSum acc;
  for (u64 x = 0; x < qu; ++x) {
    u64 idx = (mul_mod(mul_mod(x, x, qu), au, qu) + mul_mod(bu, x, qu)) % qu;
    acc.add(roots.at_reduced(static_cast<i64>(idx)));
  }
  return acc.value();
}

std::vector<cplx> gauss_sum_direct_all_b(i64 a, i64 q) {
  if (q < 1) throw std::invalid_argument("gauss_sum_direct_all_b: q must be positive");
  std::vector<cplx> out(static_cast<size_t>(q));
  if (q == 1) {
    out[0] = {1.0, 0.0};
    return out;
  }
  u64 qu = static_cast<u64>(q);
  u64 au = static_cast<u64>(reduce_mod(a, q));
  std::vector<i64> quad(static_cast<size_t>(q));
  for (u64 x = 0; x < qu; ++x)
    quad[static_cast<size_t>(x)] = static_cast<i64>(mul_mod(mul_mod(x, x, qu), au, qu));
  std::vector<double> wr(static_cast<size_t>(q)), wi(static_cast<size_t>(q));
  for (i64 k = 0; k < q; ++k) {
    double t = kTwoPi * static_cast<double>(k) / static_cast<double>(q);
    wr[static_cast<size_t>(k)] = std::cos(t);
    wi[static_cast<size_t>(k)] = std::sin(t);
  }
  for (i64 b = 0; b < q; ++b) {
    double sre = 0, sim = 0;
    i64 t = 0;  // b*x mod q, updated incrementally
    for (i64 x = 0; x < q; ++x) {
      i64 idx = quad[static_cast<size_t>(x)] + t;
      if (idx >= q) idx -= q;
      sre += wr[static_cast<size_t>(idx)];
      sim += wi[static_cast<size_t>(idx)];
      t += b;
      if (t >= q) t -= q;
    }
    out[static_cast<size_t>(b)] = {sre, sim};
  }
  return out;
}

namespace {

// q odd, gcd(a, q) = 1: G(a,b;q) = e(-4bar abar b^2 / q) (a/q) eps_q sqrt(q)
cplx gauss_sum_odd(i64 a, i64 b, i64 q) {
  if (q == 1) return {1.0, 0.0};
  u64 qu = static_cast<u64>(q);
  u64 b2 = mul_mod(static_cast<u64>(reduce_mod(b, q)), static_cast<u64>(reduce_mod(b, q)), qu);
  u64 inv4a = mul_mod(static_cast<u64>(inv_mod_any(4, q)), static_cast<u64>(inv_mod_any(a, q)), qu);
  u64 r = mul_mod(inv4a, b2, qu);
  cplx phase = unit_phase(-static_cast<double>(r) / static_cast<double>(q));
  double sign = jacobi_symbol(a, q);
  return phase * sign * epsilon_q(q) * std::sqrt(static_cast<double>(q));
}

}  // namespace

cplx gauss_sum_fast(i64 a, i64 b, i64 q) {
  if (q < 1) throw std::invalid_argument("gauss_sum_fast: q must be positive");
  if (gcd_i64(a, q) != 1) throw std::invalid_argument("gauss_sum_fast: requires gcd(a, q) = 1");
  if (q == 1) return {1.0, 0.0};
  i64 pow2 = 1;
  i64 m = q;
  while (m % 2 == 0) {
    pow2 *= 2;
    m /= 2;
  }
  cplx odd_part, even_part{1.0, 0.0};
  if (pow2 == 1) {
    odd_part = gauss_sum_odd(reduce_mod(a, m), b, m);
    return odd_part;
  }
  if (pow2 > (1 << 26)) throw std::invalid_argument("gauss_sum_fast: 2-power part too large");
  // G(a,b;q1 q2) = G(a q2, b; q1) G(a q1, b; q2) with q1 = 2^e, q2 = m
  even_part = gauss_sum_direct(
      static_cast<i64>(mul_mod(static_cast<u64>(reduce_mod(a, pow2)),
                               static_cast<u64>(m % pow2), static_cast<u64>(pow2))),
      b, pow2);
  odd_part = m == 1 ? cplx(1.0, 0.0)
                    : gauss_sum_odd(static_cast<i64>(mul_mod(
                                        static_cast<u64>(reduce_mod(a, m)),
                                        static_cast<u64>(pow2 % m), static_cast<u64>(m))),
                                    b, m);
  return even_part * odd_part;
}

KloostermanTable::KloostermanTable(i64 c) : c_(c), roots_(c >= 1 ? c : 1) {
  if (c < 1) throw std::invalid_argument("KloostermanTable: c must be positive");
  if (c == 1) return;
  inv_.assign(static_cast<size_t>(c), 0);
  for (i64 x = 1; x < c; ++x) {
    if (gcd_i64(x, c) != 1) continue;
    units_.push_back(x);
    inv_[static_cast<size_t>(x)] = inv_mod_any(x, c);
  }
}

cplx KloostermanTable::eval(i64 m, i64 n) const {
  if (c_ == 1) return {1.0, 0.0};
  i64 mr = reduce_mod(m, c_);
  i64 nr = reduce_mod(n, c_);
  KahanSum acc;
  for (i64 x : units_) {
    u64 idx = (mul_mod(static_cast<u64>(mr), static_cast<u64>(x), static_cast<u64>(c_)) +
               mul_mod(static_cast<u64>(nr), static_cast<u64>(inv_[static_cast<size_t>(x)]),
                       static_cast<u64>(c_))) %
              static_cast<u64>(c_);
    acc.add(roots_.at_reduced(static_cast<i64>(idx)));
  }
  return acc.value();
}

cplx kloosterman(i64 m, i64 n, i64 c) { return KloostermanTable(c).eval(m, n); }

cplx salie(i64 m, i64 n, i64 p) {
  if (p < 3 || p % 2 == 0 || !is_prime(static_cast<u64>(p)))
    throw std::invalid_argument("salie: p must be an odd prime");
  // quadratic residue table
  std::vector<int> leg(static_cast<size_t>(p), -1);
  leg[0] = 0;
  for (i64 y = 1; y < p; ++y) leg[static_cast<size_t>(mul_mod(y, y, p))] = 1;
  UnitRoots roots(p);
  i64 mr = reduce_mod(m, p), nr = reduce_mod(n, p);
  KahanSum acc;
  for (i64 x = 1; x < p; ++x) {
    i64 idx = static_cast<i64>((mul_mod(mr, x, p) + mul_mod(nr, static_cast<u64>(inv_mod_any(x, p)), p)) %
                               static_cast<u64>(p));
    acc.add(roots.at_reduced(idx) * static_cast<double>(leg[static_cast<size_t>(x)]));
  }
  return acc.value();
}

i64 sum_of_squares_count(i64 n, int ell) {
  if (n < 0) throw std::invalid_argument("sum_of_squares_count: n must be >= 0");
  if (ell < 1 || ell > 8) throw std::invalid_argument("sum_of_squares_count: ell in [1, 8]");
  if (ell == 1) {
    if (n == 0) return 1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? 2 : 0;
  }
  i64 total = 0;
  i64 mmax = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (mmax * mmax > n) --mmax;
  while ((mmax + 1) * (mmax + 1) <= n) ++mmax;
  for (i64 m = -mmax; m <= mmax; ++m) total += sum_of_squares_count(n - m * m, ell - 1);
  return total;
}

std::vector<i64> sum_of_squares_table(i64 X, int ell) {
  if (X < 0) throw std::invalid_argument("sum_of_squares_table: X must be >= 0");
  if (ell < 1 || ell > 8) throw std::invalid_argument("sum_of_squares_table: ell in [1, 8]");
  if (static_cast<double>(ell) * static_cast<double>(X) > 1e8)
    throw std::invalid_argument("sum_of_squares_table: memory budget ell*X <= 1e8 exceeded");
  std::vector<i64> cur(static_cast<size_t>(X) + 1, 0), next;
  cur[0] = 1;  // r_0
  i64 mmax = static_cast<i64>(std::sqrt(static_cast<double>(X)));
  while (mmax * mmax > X) --mmax;
  while ((mmax + 1) * (mmax + 1) <= X) ++mmax;
  for (int pass = 0; pass < ell; ++pass) {
    next.assign(static_cast<size_t>(X) + 1, 0);
    for (i64 m = 0; m <= mmax; ++m) {
      i64 sq = m * m;
      if (sq > X) break;
      i64 w = m == 0 ? 1 : 2;
      const i64* src = cur.data();
      i64* dst = next.data() + sq;
      i64 len = X - sq + 1;
      for (i64 k = 0; k < len; ++k) dst[k] += w * src[k];
    }
    cur.swap(next);
  }
  return cur;
}

cplx theta_sum(double alpha, double X) {
  if (X < 1) throw std::invalid_argument("theta_sum: X must be >= 1");
  i64 M = static_cast<i64>(std::sqrt(X));
  while (static_cast<double>(M) * static_cast<double>(M) > X) --M;
  while (static_cast<double>(M + 1) * static_cast<double>(M + 1) <= X) ++M;
  double a = alpha - std::floor(alpha);
  KahanSum acc;
  for (i64 m = 1; m <= M; ++m)
    acc.add(unit_phase(a * static_cast<double>(m) * static_cast<double>(m)));
  return 1.0 + 2.0 * acc.value();
}

cplx weighted_exp_sum(double alpha, const ThetaSumParams& params,
                      const CoefficientSequence& A, const TestFunction& phi) {
  double X = params.X;
  i64 n_lo = static_cast<i64>(std::ceil(X / 2));
  i64 n_hi = static_cast<i64>(std::floor(X));
  if (!A.covers(n_lo + params.h, n_hi + params.h))
    throw std::out_of_range("weighted_exp_sum: coefficient range insufficient");
  std::vector<double> coeffs = A.values(n_lo + params.h, n_hi + params.h);
  double a = alpha - std::floor(alpha);
  KahanSum acc;
  for (i64 n = n_lo; n <= n_hi; ++n) {
    double w = phi(static_cast<double>(n) / X);
    if (w == 0.0) continue;
    acc.add(coeffs[static_cast<size_t>(n - n_lo)] * w * unit_phase(-a * static_cast<double>(n)));
  }
  return acc.value();
}

}  // namespace shiftconv
