// The complete character sum
//
//   C(b1,b2,b3,n1,n2,h,v;q) = sum_{a mod q}* e((a h - abar v)/q)
//                             G(a,b1;q) G(a,b2;q) G(a,b3;q) S(-abar, n2; q/n1)
//
// together with its exact factorizations: the CRT split over q = (q1 q2) * q3,
// the square-free / square-full split of q3, and the prime-by-prime
// factorization of the square-free part, down to the reduced sum
//
//   Ttilde(p) = sum_{x mod p}* (x/p) e((r1h x - w xbar)/p) S(-r2 xbar, r3n2; p)
//
// with w = 4bar (4v + b1^2 + b2^2 + b3^2). Also the Newton polytope of the
// opened phase polynomial and the Adolphson-Sperber face nondegeneracy check,
// and the empirical bound sweeps that freeze measured constants.
#pragma once

#include <iosfwd>
#include <optional>

#include "shiftconv/arith.hpp"
#include "shiftconv/bound_report.hpp"
#include "shiftconv/common.hpp"
#include "shiftconv/exp_sums.hpp"

namespace shiftconv {

struct CharSumParams {
  i64 b1 = 0, b2 = 0, b3 = 0;
  i64 n1 = 1;  // must divide q
  i64 n2 = 0;
  i64 h = 0;  // >= 0
  i64 v = 0;
  i64 q = 1;
};

struct CharSumValue {
  cplx value;
  double scale;  // sum over a of |G G G S|; tolerance reference
};

// The literal sum. Throws unless n1 | q.
CharSumValue twisted_char_sum(const CharSumParams& P);

// C = part_q12 * part_q3 over q' = q1 q2 and q3 = q / q', with the twisted
// arguments produced by the reciprocity split of a mod q. Each part carries
// its internal term-magnitude scale for tolerance bookkeeping.
struct CharSumCrtSplit {
  CharSumValue part_q12;
  CharSumValue part_q3;
};
CharSumCrtSplit char_sum_crt_split(const CharSumParams& P);

// part_q3 = part_squarefree * part_squarefull over q3 = q3_sf * q3_ff.
struct CharSumSquarefullSplit {
  CharSumValue part_squarefree;
  CharSumValue part_squarefull;
};
CharSumSquarefullSplit char_sum_squarefull_split(const CharSumParams& P);

// Per-prime factors of part_squarefree over the primes of q3_sf; their
// product equals part_squarefree. Requires q3_sf square-free and odd
// (guaranteed by the chain; rejects otherwise).
std::vector<CharSumValue> char_sum_prime_factors(const CharSumParams& P);

// T(p): the unreduced per-prime factor, with literal Gauss sums.
cplx prime_char_sum_full(i64 p, i64 b1, i64 b2, i64 b3, i64 r1h, i64 v, i64 r2,
                         i64 r3n2);

// Ttilde(p): Legendre-twisted reduced form; T = eps_p^3 p^{3/2} Ttilde.
// Requires p an odd prime and gcd(r2, p) = 1.
cplx reduced_prime_char_sum(i64 p, i64 r1h, i64 w, i64 r2, i64 r3n2);

// ---------------------------------------------------------------------------
// Bound sweeps
// ---------------------------------------------------------------------------

struct ReducedSumSample {
  i64 p = 0, h = 0, w = 0, r2 = 1, r3n2 = 0;
};

struct ReducedSumSweepReport {
  BoundReport<ReducedSumSample> overall;       // |Ttilde| / ((h,p)^{1/2} p)
  BoundReport<ReducedSumSample> case_p_div_h;  // ratio vs p^{3/2}, <= 2 by Weil
  BoundReport<ReducedSumSample> case_salie;    // p | n2 case; per-sample <= 2/sqrt(p)
  BoundReport<ReducedSumSample> case_generic;  // square-root cancellation case
  double max_salie_excess = 0;                 // max of ratio - 2/sqrt(p) over salie case
  u64 seed = 0;
  i64 p_max = 0;
  int samples_per_case = 0;
};

ReducedSumSweepReport reduced_sum_bound_sweep(i64 p_max, int samples_per_case,
                                              u64 seed, int threads = 1,
                                              std::ostream* records = nullptr);

struct CharSumSweepReport {
  BoundReport<CharSumParams> overall;  // |C| * sqrt(n1) / ((q1 q2 q3ff)^3 q3sf^{5/2} (h,q3sf)^{1/2})
  u64 seed = 0;
  i64 q_max = 0;
  int samples = 0;
};

CharSumSweepReport char_sum_bound_sweep(i64 q_max, int samples, u64 seed,
                                        int threads = 1,
                                        std::ostream* records = nullptr);

// ---------------------------------------------------------------------------
// Newton polytope and nondegeneracy
// ---------------------------------------------------------------------------

struct LaurentTerm {
  i64 coeff;  // nonzero mod p
  i64 ex, ey;
};

struct LaurentPoly {
  std::vector<LaurentTerm> terms;  // distinct exponent pairs
};

// Phase polynomial of the opened Kloosterman-twisted sum:
//   f = r1h x - w x^{-1} - r2 x^{-1} y + r3n2 y^{-1}
// with coefficients reduced mod p and vanishing ones dropped.
LaurentPoly opened_kloosterman_phase(i64 p, i64 r1h, i64 w, i64 r2, i64 r3n2);

struct LatticePoint {
  i64 x = 0, y = 0;
  bool operator==(const LatticePoint& o) const { return x == o.x && y == o.y; }
};

// Counterclockwise vertices of the convex hull of supp(f) together with the
// origin. Throws on an empty polynomial.
std::vector<LatticePoint> newton_polytope(const LaurentPoly& f);

enum class FieldLevel { symbolic, fp, fp2 };

struct FaceVerdict {
  std::vector<LatticePoint> face;   // one point: vertex face; two: edge endpoints
  std::vector<LaurentTerm> terms;   // face-restricted polynomial
  bool nondegenerate = true;
  FieldLevel checked = FieldLevel::symbolic;
  bool has_witness = false;
  std::string witness;  // "(x, y)" over F_p or F_p2 when found
};

struct NondegeneracyReport {
  bool nondegenerate = true;  // conjunction over faces
  std::vector<FaceVerdict> faces;  // faces of the polytope not containing (0,0)
};

// Enumerates the faces of the Newton polytope avoiding the origin and
// decides emptiness of the critical locus of each face polynomial in the
// torus: symbolically for 1- and 2-term faces, by exhaustive search over
// F_p and F_{p^2} for larger ones (point budget `budget`); faces with more
// than 3 terms beyond the budget are rejected.
NondegeneracyReport nondegenerate_check(const LaurentPoly& f, i64 p,
                                        i64 budget = 400'000'000);

}  // namespace shiftconv
