#include "shiftconv/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace shiftconv {

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 pow_mod(u64 a, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

i64 gcd_i64(i64 a, i64 b) {
  return static_cast<i64>(std::gcd(a < 0 ? -a : a, b < 0 ? -b : b));
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for n < 3.3e24
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    const u64 limit = 1'000'000;
    std::vector<bool> sieve(limit + 1, true);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
      if (!sieve[i]) continue;
      out.push_back(i);
      for (u64 j = i * i; j <= limit; j += i) sieve[j] = false;
    }
    return out;
  }();
  return primes;
}

// Floyd cycle finding with batched gcds; n odd composite, no factor <= 1e6.
u64 pollard_rho(u64 n, u64 c0) {
  for (u64 c = c0;; ++c) {
    auto step = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    u64 x = 2, y = step(2), q = 1, d = 1;
    int count = 0;
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      if (x == y) break;  // cycle without factor; new offset
      q = mul_mod(q, x > y ? x - y : y - x, n);
      if (q == 0) {
        d = std::gcd(x > y ? x - y : y - x, n);
        break;
      }
      if (++count == 64) {
        d = std::gcd(q, n);
        count = 0;
        q = 1;
      }
    }
    if (d == 1) d = std::gcd(q, n);
    if (d != 1 && d != n) return d;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n, 1);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

Factorization factorize(u64 n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
  Factorization f;
  f.value = n;
  std::vector<u64> primes_found;
  for (u64 p : small_primes()) {
    if (p * p > n) break;
    while (n % p == 0) {
      primes_found.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factor_rec(n, primes_found);
  std::sort(primes_found.begin(), primes_found.end());
  for (u64 p : primes_found) {
    if (!f.factors.empty() && f.factors.back().first == p)
      ++f.factors.back().second;
    else
      f.factors.push_back({p, 1});
  }
  return f;
}

i64 inv_mod_any(i64 a, i64 q) {
  if (q < 1) throw std::invalid_argument("inv_mod: modulus must be positive");
  if (q == 1) return 0;
  i64 r = a % q;
  if (r < 0) r += q;
  // extended Euclid
  i64 old_r = r, cur_r = q;
  i64 old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    i64 quot = old_r / cur_r;
    i64 t = old_r - quot * cur_r;
    old_r = cur_r;
    cur_r = t;
    t = old_s - quot * cur_s;
    old_s = cur_s;
    cur_s = t;
  }
  if (old_r != 1) throw std::invalid_argument("inv_mod: arguments not coprime");
  i64 inv = old_s % q;
  if (inv < 0) inv += q;
  return inv;
}

i64 inv_mod(i64 a, i64 q) {
  if (q < 2) throw std::invalid_argument("inv_mod: q must be >= 2");
  return inv_mod_any(a, q);
}

int jacobi_symbol(i64 a, i64 n) {
  if (n < 1 || (n & 1) == 0) throw std::invalid_argument("jacobi_symbol: n must be odd positive");
  a %= n;
  if (a < 0) a += n;
  int sign = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      i64 m = n & 7;
      if (m == 3 || m == 5) sign = -sign;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) sign = -sign;
    a %= n;
  }
  return n == 1 ? sign : 0;
}

cplx epsilon_q(i64 q) {
  if (q < 1 || (q & 1) == 0) throw std::invalid_argument("epsilon_q: q must be odd positive");
  return (q % 4 == 1) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
}

std::pair<i64, i64> crt_split(i64 a, i64 qA, i64 qB) {
  if (qA < 1 || qB < 1 || gcd_i64(qA, qB) != 1)
    throw std::invalid_argument("crt_split: moduli must be coprime positive");
  if (gcd_i64(a, qA * qB) != 1)
    throw std::invalid_argument("crt_split: a must be a unit mod qA*qB");
  i64 a1 = qA == 1 ? 0 : (a % qA + qA) % qA;
  i64 a2 = qB == 1 ? 0 : (a % qB + qB) % qB;
  // a = a1*qB + a2*qA requires a1 = a*inv(qB) mod qA, a2 = a*inv(qA) mod qB
  if (qA > 1) a1 = static_cast<i64>(mul_mod(static_cast<u64>(a1), static_cast<u64>(inv_mod_any(qB, qA)), static_cast<u64>(qA)));
  if (qB > 1) a2 = static_cast<i64>(mul_mod(static_cast<u64>(a2), static_cast<u64>(inv_mod_any(qA, qB)), static_cast<u64>(qB)));
  return {a1, a2};
}

FactorChain factor_chain(i64 q, i64 n1) {
  if (q < 1 || n1 < 1) throw std::invalid_argument("factor_chain: arguments must be positive");
  FactorChain ch;
  ch.q = q;
  ch.n1 = n1;
  Factorization f = factorize(static_cast<u64>(q));
  i64 q1 = 1, q2 = 1, q3 = 1;
  for (auto [p, e] : f.factors) {
    i64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= static_cast<i64>(p);
    if (n1 % pe == 0) {
      q1 *= pe;  // full prime power divides n1
    } else if (n1 % static_cast<i64>(p) == 0) {
      q2 *= pe;  // prime divides n1 but the full power does not
    } else {
      q3 *= pe;
    }
  }
  ch.q1 = q1;
  ch.q2 = q2;
  // q3 = q3_sf * q3_ff with q3_sf odd square-free, gcd(q3_sf, 2 q3_ff) = 1,
  // and 4*q3_ff square-full (the whole 2-part of q3 lands in q3_ff).
  i64 sf = 1, ff = 1;
  Factorization f3 = factorize(static_cast<u64>(q3));
  for (auto [p, e] : f3.factors) {
    i64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= static_cast<i64>(p);
    if (p != 2 && e == 1)
      sf *= pe;
    else
      ff *= pe;
  }
  ch.q3_sf = sf;
  ch.q3_ff = ff;
  return ch;
}

std::vector<u64> divisors(u64 n) {
  Factorization f = factorize(n);
  std::vector<u64> out{1};
  for (auto [p, e] : f.factors) {
    size_t base = out.size();
    u64 pe = 1;
    for (int i = 0; i < e; ++i) {
      pe *= p;
      for (size_t k = 0; k < base; ++k) out.push_back(out[k] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 euler_phi(u64 n) {
  Factorization f = factorize(n);
  u64 r = n;
  for (auto [p, e] : f.factors) r = r / p * (p - 1);
  return r;
}

int mobius(u64 n) {
  Factorization f = factorize(n);
  for (auto [p, e] : f.factors)
    if (e > 1) return 0;
  return (f.factors.size() % 2 == 0) ? 1 : -1;
}

i64 tau(u64 n) {
  Factorization f = factorize(n);
  i64 t = 1;
  for (auto [p, e] : f.factors) t *= (e + 1);
  return t;
}

i64 tau3(u64 n) {
  Factorization f = factorize(n);
  i64 t = 1;
  for (auto [p, e] : f.factors) t *= static_cast<i64>(e + 1) * (e + 2) / 2;
  return t;
}

double sum_log_divisors(u64 n, int power) {
  if (power != 1 && power != 2) throw std::invalid_argument("sum_log_divisors: power must be 1 or 2");
  double s = 0;
  for (u64 d : divisors(n)) {
    double ld = std::log(static_cast<double>(d));
    s += power == 1 ? ld : ld * ld;
  }
  return s;
}

}  // namespace shiftconv
