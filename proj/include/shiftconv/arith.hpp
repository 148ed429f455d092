// Integer and modular arithmetic: 64-bit factorization (trial division +
// Miller-Rabin + Pollard rho), modular inverses, Jacobi symbols, CRT
// splitting, divisor functions, and the modulus factor chain
// q = q1 * q2 * q3_sf * q3_ff used by the character-sum cascade.
#pragma once

#include <utility>
#include <vector>

#include "shiftconv/common.hpp"

namespace shiftconv {

struct Factorization {
  u64 value = 1;
  // (prime, exponent), primes strictly increasing, exponents >= 1
  std::vector<std::pair<u64, int>> factors;
};

// Deterministic for all n in [1, 2^63].
Factorization factorize(u64 n);

bool is_prime(u64 n);

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 a, u64 e, u64 m);

i64 gcd_i64(i64 a, i64 b);

// Multiplicative inverse of a mod q, result in [1, q-1]. Requires q >= 2 and
// gcd(a, q) = 1; throws otherwise.
i64 inv_mod(i64 a, i64 q);

// Same, but accepts q = 1 (returns 0). Used internally where the empty
// modulus convention applies.
i64 inv_mod_any(i64 a, i64 q);

// Jacobi symbol (a/n) for odd n >= 1. Throws on even n.
int jacobi_symbol(i64 a, i64 n);

// 1 if q = 1 mod 4, i if q = 3 mod 4. Odd q only.
cplx epsilon_q(i64 q);

// Writes a = a1*qB + a2*qA (mod qA*qB) with a1 reduced mod qA, a2 mod qB.
// Requires gcd(qA, qB) = 1 and gcd(a, qA*qB) = 1.
std::pair<i64, i64> crt_split(i64 a, i64 qA, i64 qB);

struct FactorChain {
  i64 q = 1;
  i64 n1 = 1;
  i64 q1 = 1;     // largest factor of q with q1 | n1 and gcd(q1, q/q1) = 1
  i64 q2 = 1;     // largest factor of q/q1 supported on primes of n1, coprime to the rest
  i64 q3_sf = 1;  // odd square-free part of q / (q1 q2)
  i64 q3_ff = 1;  // complementary part; 4*q3_ff is square-full
};

FactorChain factor_chain(i64 q, i64 n1);

// Divisors of n in increasing order.
std::vector<u64> divisors(u64 n);

u64 euler_phi(u64 n);
int mobius(u64 n);

// tau(n) = #divisors, tau3(n) = #{(a,b,c): abc = n}.
i64 tau(u64 n);
i64 tau3(u64 n);

// sum over d | n of (log d)^power, power in {1, 2}
double sum_log_divisors(u64 n, int power);

}  // namespace shiftconv
