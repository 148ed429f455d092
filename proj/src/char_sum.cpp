#include "shiftconv/char_sum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace shiftconv {

namespace {

i64 reduce_mod(i64 a, i64 q) {
  i64 r = a % q;
  return r < 0 ? r + q : r;
}

i64 mulm(i64 a, i64 b, i64 q) {
  if (q == 1) return 0;
  return static_cast<i64>(mul_mod(static_cast<u64>(reduce_mod(a, q)),
                                  static_cast<u64>(reduce_mod(b, q)),
                                  static_cast<u64>(q)));
}

// sum over units a mod Q of
//   e((a*A - abar*V)/Q) G(a,b1;Q) G(a,b2;Q) G(a,b3;Q) S(-abar*K1, K2; C)
CharSumValue generic_char_sum(i64 Q, i64 A, i64 V, i64 b1, i64 b2, i64 b3,
                              i64 K1, i64 K2, i64 C) {
  KloostermanTable kt(C);
  if (Q == 1) {
    cplx s = kt.eval(0, K2);
    return {s, std::abs(s)};
  }
  UnitRoots roots(Q);
  i64 Ar = reduce_mod(A, Q), Vr = reduce_mod(V, Q);
  KahanSum acc;
  double scale = 0;
  double s_atoms = C == 1 ? 1.0 : static_cast<double>(kt.units().size());
  for (i64 a = 1; a < Q; ++a) {
    if (gcd_i64(a, Q) != 1) continue;
    i64 abar = inv_mod_any(a, Q);
    cplx g1 = gauss_sum_fast(a, b1, Q);
    cplx g2 = gauss_sum_fast(a, b2, Q);
    cplx g3 = gauss_sum_fast(a, b3, Q);
    cplx s = kt.eval(-mulm(abar, K1, C), K2);
    cplx phase = roots.at(mulm(a, Ar, Q) - mulm(abar, Vr, Q));
    acc.add(phase * g1 * g2 * g3 * s);
    // unit-term atom count: the Kloosterman value expands into phi(C) atoms
    scale += std::abs(g1 * g2 * g3) * s_atoms;
  }
  return {acc.value(), scale};
}

void require_chain(const CharSumParams& P, FactorChain& ch) {
  if (P.q < 1) throw std::invalid_argument("char_sum: q must be positive");
  if (P.n1 < 1 || P.q % P.n1 != 0)
    throw std::invalid_argument("char_sum: requires n1 | q");
  ch = factor_chain(P.q, P.n1);
}

CharSumValue prime_char_sum_full_scaled(i64 p, i64 b1, i64 b2, i64 b3, i64 r1h,
                                        i64 v, i64 r2, i64 r3n2);

}  // namespace

CharSumValue twisted_char_sum(const CharSumParams& P) {
  FactorChain ch;
  require_chain(P, ch);
  return generic_char_sum(P.q, P.h, P.v, P.b1, P.b2, P.b3, 1, P.n2, P.q / P.n1);
}

CharSumCrtSplit char_sum_crt_split(const CharSumParams& P) {
  FactorChain ch;
  require_chain(P, ch);
  i64 qp = ch.q1 * ch.q2;        // q'
  i64 q3 = ch.q3_sf * ch.q3_ff;  // q3
  i64 qhat = qp / P.n1;          // q' / n1 (n1 | q1 q2 whenever n1 | q)
  CharSumCrtSplit out;
  {
    // over q': additive twist qbar3^2 h; Kloosterman S(-abar q3, n2 qbar3^2; qhat)
    i64 q3bar = inv_mod_any(reduce_mod(q3, qp), qp);
    i64 A = mulm(mulm(q3bar, q3bar, qp), P.h, qp);
    i64 q3bar_hat = inv_mod_any(reduce_mod(q3, std::max<i64>(qhat, 1)), std::max<i64>(qhat, 1));
    i64 K2 = mulm(mulm(q3bar_hat, q3bar_hat, std::max<i64>(qhat, 1)), P.n2, std::max<i64>(qhat, 1));
    out.part_q12 = generic_char_sum(qp, A, P.v, P.b1, P.b2, P.b3,
                                    reduce_mod(q3, std::max<i64>(qhat, 1)), K2, qhat);
  }
  {
    // over q3: additive twist qbar'^2 h; Kloosterman S(-abar q', n2 qhatbar^2; q3)
    i64 qpbar = inv_mod_any(reduce_mod(qp, q3), q3);
    i64 A = mulm(mulm(qpbar, qpbar, q3), P.h, q3);
    i64 qhatbar = inv_mod_any(reduce_mod(qhat, q3), q3);
    i64 K2 = mulm(mulm(qhatbar, qhatbar, q3), P.n2, q3);
    out.part_q3 =
        generic_char_sum(q3, A, P.v, P.b1, P.b2, P.b3, reduce_mod(qp, q3), K2, q3);
  }
  return out;
}

CharSumSquarefullSplit char_sum_squarefull_split(const CharSumParams& P) {
  FactorChain ch;
  require_chain(P, ch);
  i64 qp = ch.q1 * ch.q2;
  i64 qhat = qp / P.n1;
  i64 qsf = ch.q3_sf, qff = ch.q3_ff;
  CharSumSquarefullSplit out;
  {
    // over q3': e((g qbar'^2 qbar''^2 h - gbar v)/q3'), S(-gbar q' q3'', n2 qhatbar^2 qbar''^2; q3')
    i64 m = qsf;
    i64 qpbar = inv_mod_any(reduce_mod(qp, m), m);
    i64 qffbar = inv_mod_any(reduce_mod(qff, m), m);
    i64 A = mulm(mulm(mulm(qpbar, qpbar, m), mulm(qffbar, qffbar, m), m), P.h, m);
    i64 qhatbar = inv_mod_any(reduce_mod(qhat, m), m);
    i64 K2 = mulm(mulm(mulm(qhatbar, qhatbar, m), mulm(qffbar, qffbar, m), m), P.n2, m);
    i64 K1 = mulm(qp, qff, m);
    out.part_squarefree = generic_char_sum(m, A, P.v, P.b1, P.b2, P.b3, K1, K2, m);
  }
  {
    // over q3'': same with the roles of q3' and q3'' exchanged
    i64 m = qff;
    i64 qpbar = inv_mod_any(reduce_mod(qp, m), m);
    i64 qsfbar = inv_mod_any(reduce_mod(qsf, m), m);
    i64 A = mulm(mulm(mulm(qpbar, qpbar, m), mulm(qsfbar, qsfbar, m), m), P.h, m);
    i64 qhatbar = inv_mod_any(reduce_mod(qhat, m), m);
    i64 K2 = mulm(mulm(mulm(qhatbar, qhatbar, m), mulm(qsfbar, qsfbar, m), m), P.n2, m);
    i64 K1 = mulm(qp, qsf, m);
    out.part_squarefull = generic_char_sum(m, A, P.v, P.b1, P.b2, P.b3, K1, K2, m);
  }
  return out;
}

std::vector<CharSumValue> char_sum_prime_factors(const CharSumParams& P) {
  FactorChain ch;
  require_chain(P, ch);
  i64 qp = ch.q1 * ch.q2;
  i64 qhat = qp / P.n1;
  i64 qsf = ch.q3_sf, qff = ch.q3_ff;
  Factorization f = factorize(static_cast<u64>(qsf));
  for (auto [p, e] : f.factors) {
    if (e > 1 || p == 2)
      throw std::invalid_argument("char_sum_prime_factors: q3' must be odd square-free");
  }
  std::vector<CharSumValue> out;
  for (auto [pu, e] : f.factors) {
    i64 p = static_cast<i64>(pu);
    i64 pprime = qsf / p;  // complementary factor of q3'
    i64 qpbar = inv_mod_any(reduce_mod(qp, p), p);
    i64 qffbar = inv_mod_any(reduce_mod(qff, p), p);
    i64 ppbar = inv_mod_any(reduce_mod(pprime, p), p);
    i64 tw = mulm(mulm(mulm(qpbar, qpbar, p), mulm(qffbar, qffbar, p), p),
                  mulm(ppbar, ppbar, p), p);  // qbar'^2 qbar''^2 pbar'^2
    i64 r1h = mulm(tw, P.h, p);
    i64 r2 = mulm(mulm(qp, qff, p), pprime, p);
    i64 qhatbar = inv_mod_any(reduce_mod(qhat, p), p);
    i64 r3n2 = mulm(mulm(mulm(qhatbar, qhatbar, p), mulm(qffbar, qffbar, p), p),
                    mulm(mulm(ppbar, ppbar, p), P.n2, p), p);
    out.push_back(prime_char_sum_full_scaled(p, P.b1, P.b2, P.b3, r1h, P.v, r2, r3n2));
  }
  return out;
}

namespace {

CharSumValue prime_char_sum_full_scaled(i64 p, i64 b1, i64 b2, i64 b3, i64 r1h,
                                        i64 v, i64 r2, i64 r3n2) {
  if (p < 3 || !is_prime(static_cast<u64>(p)))
    throw std::invalid_argument("prime_char_sum_full: p must be an odd prime");
  UnitRoots roots(p);
  KloostermanTable kt(p);
  // literal Gauss sums G(x, b_j; p) for every unit x
  std::array<std::vector<cplx>, 3> gs;
  i64 bs[3] = {b1, b2, b3};
  for (int j = 0; j < 3; ++j) {
    gs[j].assign(static_cast<size_t>(p), cplx(0, 0));
    for (i64 x = 1; x < p; ++x) gs[j][static_cast<size_t>(x)] = gauss_sum_direct(x, bs[j], p);
  }
  i64 hr = reduce_mod(r1h, p), vr = reduce_mod(v, p);
  KahanSum acc;
  double scale = 0;
  for (i64 x = 1; x < p; ++x) {
    i64 xbar = kt.inverse_of(x);
    cplx phase = roots.at(mulm(x, hr, p) - mulm(xbar, vr, p));
    cplx s = kt.eval(-mulm(xbar, r2, p), r3n2);
    acc.add(phase * gs[0][static_cast<size_t>(x)] * gs[1][static_cast<size_t>(x)] *
            gs[2][static_cast<size_t>(x)] * s);
    scale += std::abs(gs[0][static_cast<size_t>(x)] * gs[1][static_cast<size_t>(x)] *
                      gs[2][static_cast<size_t>(x)]) *
             static_cast<double>(p - 1);
  }
  return {acc.value(), scale};
}

}  // namespace

cplx prime_char_sum_full(i64 p, i64 b1, i64 b2, i64 b3, i64 r1h, i64 v, i64 r2,
                         i64 r3n2) {
  return prime_char_sum_full_scaled(p, b1, b2, b3, r1h, v, r2, r3n2).value;
}

cplx reduced_prime_char_sum(i64 p, i64 r1h, i64 w, i64 r2, i64 r3n2) {
  if (p < 3 || !is_prime(static_cast<u64>(p)))
    throw std::invalid_argument("reduced_prime_char_sum: p must be an odd prime");
  if (gcd_i64(r2, p) != 1)
    throw std::invalid_argument("reduced_prime_char_sum: requires gcd(r2, p) = 1");
  std::vector<int> leg(static_cast<size_t>(p), -1);
  leg[0] = 0;
  for (i64 y = 1; y < p; ++y) leg[static_cast<size_t>(mul_mod(y, y, p))] = 1;
  UnitRoots roots(p);
  KloostermanTable kt(p);
  i64 hr = reduce_mod(r1h, p), wr = reduce_mod(w, p);
  KahanSum acc;
  for (i64 x = 1; x < p; ++x) {
    i64 xbar = kt.inverse_of(x);
    cplx phase = roots.at(mulm(x, hr, p) - mulm(xbar, wr, p));
    cplx s = kt.eval(-mulm(xbar, r2, p), r3n2);
    acc.add(static_cast<double>(leg[static_cast<size_t>(x)]) * phase * s);
  }
  return acc.value();
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

ReducedSumSweepReport reduced_sum_bound_sweep(i64 p_max, int samples_per_case,
                                              u64 seed, int threads,
                                              std::ostream* records) {
  if (p_max < 3 || p_max > 2000)
    throw std::invalid_argument("reduced_sum_bound_sweep: p_max in [3, 2000]");
  ReducedSumSweepReport rep;
  rep.seed = seed;
  rep.p_max = p_max;
  rep.samples_per_case = samples_per_case;
  rep.overall.bound_formula = "(h,p)^{1/2} p";
  rep.case_p_div_h.bound_formula = "p^{3/2} (Weil)";
  rep.case_salie.bound_formula = "(h,p)^{1/2} p; per-sample 2/sqrt(p)";
  rep.case_generic.bound_formula = "(h,p)^{1/2} p";

  struct Item {
    ReducedSumSample s;
    int cse;  // 0: p|h, 1: p niet h, p|n2, 2: generic
  };
  std::vector<Item> items;
  Rng rng(seed);
  for (i64 p = 3; p <= p_max; ++p) {
    if (!is_prime(static_cast<u64>(p))) continue;
    for (int cse = 0; cse < 3; ++cse) {
      for (int k = 0; k < samples_per_case; ++k) {
        Item it;
        it.cse = cse;
        it.s.p = p;
        it.s.r2 = rng.uniform(1, p - 1);
        i64 w = rng.uniform(0, p - 1);
        if (cse == 0) {
          it.s.h = p * rng.uniform(0, 3);
          it.s.r3n2 = rng.uniform(0, p - 1);
        } else if (cse == 1) {
          it.s.h = rng.uniform(1, p - 1) + p * rng.uniform(0, 2);
          it.s.r3n2 = 0;  // p | n2
        } else {
          it.s.h = rng.uniform(1, p - 1) + p * rng.uniform(0, 2);
          it.s.r3n2 = rng.uniform(1, p - 1);
        }
        it.s.w = w;
        items.push_back(it);
      }
    }
  }
  std::vector<double> ratios(items.size());
  parallel_for(static_cast<i64>(items.size()), threads, [&](i64 i) {
    const auto& s = items[static_cast<size_t>(i)].s;
    cplx t = reduced_prime_char_sum(s.p, s.h % s.p, s.w, s.r2, s.r3n2);
    double denom = std::sqrt(static_cast<double>(gcd_i64(s.h, s.p) == 0 ? s.p : gcd_i64(s.h, s.p))) *
                   static_cast<double>(s.p);
    ratios[static_cast<size_t>(i)] = std::abs(t) / denom;
  });
  for (size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    double r = ratios[i];
    rep.overall.consider(r, it.s);
    if (it.cse == 0) {
      // denominator above equals p^{3/2} in this case
      rep.case_p_div_h.consider(r, it.s);
    } else if (it.cse == 1) {
      rep.case_salie.consider(r, it.s);
      double excess = r - 2.0 / std::sqrt(static_cast<double>(it.s.p));
      rep.max_salie_excess = std::max(rep.max_salie_excess, excess);
    } else {
      rep.case_generic.consider(r, it.s);
    }
    if (records) {
      static const char* names[3] = {"p_div_h", "salie", "generic"};
      double bound = std::sqrt(static_cast<double>(gcd_i64(it.s.h, it.s.p))) *
                     static_cast<double>(it.s.p);
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "p=%lld case=%s h=%lld w=%lld r2=%lld r3n2=%lld value=%.12g bound=%.12g ratio=%.12g\n",
                    static_cast<long long>(it.s.p), names[it.cse],
                    static_cast<long long>(it.s.h), static_cast<long long>(it.s.w),
                    static_cast<long long>(it.s.r2), static_cast<long long>(it.s.r3n2),
                    r * bound, bound, r);
      (*records) << buf;
    }
  }
  return rep;
}

CharSumSweepReport char_sum_bound_sweep(i64 q_max, int samples, u64 seed,
                                        int threads, std::ostream* records) {
  if (q_max < 2 || q_max > 2000)
    throw std::invalid_argument("char_sum_bound_sweep: q_max in [2, 2000]");
  CharSumSweepReport rep;
  rep.seed = seed;
  rep.q_max = q_max;
  rep.samples = samples;
  rep.overall.bound_formula = "(q1 q2 q3'')^3 q3'^{5/2} (h,q3')^{1/2} / sqrt(n1)";

  std::vector<CharSumParams> items;
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    CharSumParams P;
    P.q = rng.uniform(2, q_max);
    auto divs = divisors(static_cast<u64>(P.q));
    P.n1 = static_cast<i64>(divs[static_cast<size_t>(rng.uniform(0, static_cast<i64>(divs.size()) - 1))]);
    P.b1 = rng.uniform(0, P.q - 1);
    P.b2 = rng.uniform(0, P.q - 1);
    P.b3 = rng.uniform(0, P.q - 1);
    P.h = rng.uniform(0, 2 * P.q);
    P.v = rng.uniform(0, P.q - 1);
    P.n2 = rng.uniform(0, 2 * P.q);
    items.push_back(P);
  }
  std::vector<double> ratios(items.size());
  parallel_for(static_cast<i64>(items.size()), threads, [&](i64 i) {
    const CharSumParams& P = items[static_cast<size_t>(i)];
    FactorChain ch = factor_chain(P.q, P.n1);
    CharSumValue cv = twisted_char_sum(P);
    double bound = std::pow(static_cast<double>(ch.q1 * ch.q2 * ch.q3_ff), 3.0) *
                   std::pow(static_cast<double>(ch.q3_sf), 2.5) *
                   std::sqrt(static_cast<double>(ch.q3_sf == 0 ? 1 : gcd_i64(P.h, ch.q3_sf))) /
                   std::sqrt(static_cast<double>(P.n1));
    ratios[static_cast<size_t>(i)] = std::abs(cv.value) / bound;
  });
  for (size_t i = 0; i < items.size(); ++i) {
    rep.overall.consider(ratios[i], items[i]);
    if (records) {
      const auto& P = items[i];
      FactorChain ch = factor_chain(P.q, P.n1);
      double bound = std::pow(static_cast<double>(ch.q1 * ch.q2 * ch.q3_ff), 3.0) *
                     std::pow(static_cast<double>(ch.q3_sf), 2.5) *
                     std::sqrt(static_cast<double>(gcd_i64(P.h, ch.q3_sf))) /
                     std::sqrt(static_cast<double>(P.n1));
      char buf[240];
      std::snprintf(buf, sizeof buf,
                    "q=%lld n1=%lld b=(%lld,%lld,%lld) h=%lld v=%lld n2=%lld value=%.12g bound=%.12g ratio=%.12g\n",
                    static_cast<long long>(P.q), static_cast<long long>(P.n1),
                    static_cast<long long>(P.b1), static_cast<long long>(P.b2),
                    static_cast<long long>(P.b3), static_cast<long long>(P.h),
                    static_cast<long long>(P.v), static_cast<long long>(P.n2),
                    ratios[i] * bound, bound, ratios[i]);
      (*records) << buf;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Newton polytope and nondegeneracy
// ---------------------------------------------------------------------------

LaurentPoly opened_kloosterman_phase(i64 p, i64 r1h, i64 w, i64 r2, i64 r3n2) {
  if (p < 3) throw std::invalid_argument("opened_kloosterman_phase: p must be odd");
  LaurentPoly f;
  auto push = [&](i64 c, i64 ex, i64 ey) {
    c = reduce_mod(c, p);
    if (c != 0) f.terms.push_back({c, ex, ey});
  };
  push(r1h, 1, 0);
  push(-w, -1, 0);
  push(-r2, -1, 1);
  push(r3n2, 0, -1);
  return f;
}

namespace {

i64 cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const LatticePoint& a, const LatticePoint& b, const LatticePoint& m) {
  if (cross(a, b, m) != 0) return false;
  return std::min(a.x, b.x) <= m.x && m.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= m.y && m.y <= std::max(a.y, b.y);
}

// Andrew monotone chain, counterclockwise, collinear points dropped.
std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const LatticePoint& a, const LatticePoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<LatticePoint> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;  // counterclockwise
}

}  // namespace

std::vector<LatticePoint> newton_polytope(const LaurentPoly& f) {
  if (f.terms.empty()) throw std::invalid_argument("newton_polytope: empty polynomial");
  std::vector<LatticePoint> pts{{0, 0}};
  for (const auto& t : f.terms) pts.push_back({t.ex, t.ey});
  return convex_hull(std::move(pts));
}

namespace {

// F_{p^2} = F_p[t]/(t^2 - d), d the least quadratic non-residue.
struct Fp2Ctx {
  i64 p, d;
};

struct Fp2 {
  i64 a, b;  // a + b t
};

Fp2 f2mul(const Fp2Ctx& c, Fp2 u, Fp2 v) {
  i64 a = (u.a * v.a + u.b * v.b % c.p * c.d) % c.p;
  i64 b = (u.a * v.b + u.b * v.a) % c.p;
  return {a % c.p, b % c.p};
}

Fp2 f2pow(const Fp2Ctx& c, Fp2 u, i64 e) {
  Fp2 r{1, 0};
  while (e) {
    if (e & 1) r = f2mul(c, r, u);
    u = f2mul(c, u, u);
    e >>= 1;
  }
  return r;
}

bool f2zero(const Fp2Ctx& c, Fp2 u) { return u.a % c.p == 0 && u.b % c.p == 0; }

// x^e in F_{p^2}^x, exponent taken mod p^2 - 1
Fp2 f2powz(const Fp2Ctx& c, Fp2 u, i64 e) {
  i64 ord = c.p * c.p - 1;
  i64 er = e % ord;
  if (er < 0) er += ord;
  return f2pow(c, u, er);
}

struct PrimVec {
  i64 gx, gy;  // primitive direction
  i64 mult;    // v = mult * g
};

PrimVec primitive_of(i64 x, i64 y) {
  i64 g = std::gcd(x < 0 ? -x : x, y < 0 ? -y : y);
  PrimVec pv{x / g, y / g, g};
  if (pv.gx < 0 || (pv.gx == 0 && pv.gy < 0)) {
    pv.gx = -pv.gx;
    pv.gy = -pv.gy;
    pv.mult = -pv.mult;
  }
  return pv;
}

// Decide emptiness of { x,y in torus : x df/dx = y df/dy = 0 } for a face
// polynomial, symbolically where possible.
FaceVerdict judge_face(const std::vector<LaurentTerm>& terms, i64 p, i64 budget) {
  FaceVerdict out;
  out.terms = terms;
  if (terms.size() == 1) {
    // c x^a y^b: critical iff both exponents vanish mod p
    const auto& t = terms[0];
    out.nondegenerate = !(reduce_mod(t.ex, p) == 0 && reduce_mod(t.ey, p) == 0);
    out.checked = FieldLevel::symbolic;
    if (!out.nondegenerate) {
      out.has_witness = true;
      out.witness = "(1, 1)";
    }
    return out;
  }
  if (terms.size() == 2) {
    const auto& t1 = terms[0];
    const auto& t2 = terms[1];
    i64 a1 = reduce_mod(t1.ex, p), b1 = reduce_mod(t1.ey, p);
    i64 a2 = reduce_mod(t2.ex, p), b2 = reduce_mod(t2.ey, p);
    out.checked = FieldLevel::symbolic;
    if (a1 == 0 && b1 == 0 && a2 == 0 && b2 == 0) {
      out.nondegenerate = false;  // gradient vanishes identically
      out.has_witness = true;
      out.witness = "(1, 1)";
      return out;
    }
    i64 det = reduce_mod(a1 * b2 - a2 * b1, p);
    if (det != 0) {
      out.nondegenerate = true;
      return out;
    }
    // kernel direction of [[a1,a2],[b1,b2]] acting on (c1 T1, c2 T2)
    i64 k1, k2;
    if (a1 != 0 || a2 != 0) {
      k1 = a2;
      k2 = reduce_mod(-a1, p);
    } else {
      k1 = b2;
      k2 = reduce_mod(-b1, p);
    }
    if (k1 == 0 || k2 == 0) {
      out.nondegenerate = true;  // kernel needs both monomial values nonzero
      return out;
    }
    i64 detz = t1.ex * t2.ey - t2.ex * t1.ey;
    bool degenerate;
    if (detz != 0) {
      // exponent vectors independent over Z: the monomial map covers the
      // torus of the algebraic closure, so the kernel direction is realized
      degenerate = true;
    } else {
      // collinear exponents: v1 = b*g, v2 = a*g; realizable iff
      // m^{a-b} = c1 k2 / (k1 c2) has a solution m in the closure
      PrimVec pv1 = primitive_of(t1.ex, t1.ey);
      PrimVec pv2 = primitive_of(t2.ex, t2.ey);
      i64 bb = pv1.mult;
      i64 aa = (pv1.gx == pv2.gx && pv1.gy == pv2.gy) ? pv2.mult : -pv2.mult;
      if (aa != bb) {
        degenerate = true;
      } else {
        i64 lhs = mulm(reduce_mod(t1.coeff, p), k2, p);
        i64 rhs = mulm(k1, reduce_mod(t2.coeff, p), p);
        degenerate = (lhs == rhs);
      }
    }
    out.nondegenerate = !degenerate;
    if (degenerate) {
      // attach a small-field witness when one exists
      for (i64 x = 1; x < p && !out.has_witness; ++x) {
        for (i64 y = 1; y < p; ++y) {
          i64 dx = 0, dy = 0;
          for (const auto& t : terms) {
            i64 mono = mulm(reduce_mod(t.coeff, p),
                            mulm(pow_mod(x, reduce_mod(t.ex, p - 1), p),
                                 pow_mod(y, reduce_mod(t.ey, p - 1), p), p),
                            p);
            dx = reduce_mod(dx + t.ex % p * mono, p);
            dy = reduce_mod(dy + t.ey % p * mono, p);
          }
          if (dx == 0 && dy == 0) {
            out.has_witness = true;
            out.witness = "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
            break;
          }
        }
      }
    }
    return out;
  }
  // 3+ terms: exhaustive search over F_p, then F_{p^2} within budget
  if (terms.size() > 3 &&
      static_cast<double>(p) * p * p * p > static_cast<double>(budget))
    throw std::invalid_argument("nondegenerate_check: face exceeds brute-force budget");
  Fp2Ctx ctx{p, 0};
  for (i64 d = 2; d < p; ++d) {
    if (jacobi_symbol(d, p) == -1) {
      ctx.d = d;
      break;
    }
  }
  auto scan = [&](bool quadratic) -> std::optional<std::string> {
    // enumerate torus points of F_p (quadratic=false) or F_{p^2}
    i64 lim = quadratic ? p : 1;
    for (i64 xa = 0; xa < p; ++xa) {
      for (i64 xb = 0; xb < lim; ++xb) {
        if (xa == 0 && xb == 0) continue;
        for (i64 ya = 0; ya < p; ++ya) {
          for (i64 yb = 0; yb < lim; ++yb) {
            if (ya == 0 && yb == 0) continue;
            Fp2 x{xa, xb}, y{ya, yb};
            Fp2 dx{0, 0}, dy{0, 0};
            for (const auto& t : terms) {
              Fp2 mono = f2mul(ctx, f2powz(ctx, x, t.ex), f2powz(ctx, y, t.ey));
              Fp2 cm = f2mul(ctx, Fp2{reduce_mod(t.coeff, p), 0}, mono);
              dx.a = (dx.a + reduce_mod(t.ex, p) * cm.a) % p;
              dx.b = (dx.b + reduce_mod(t.ex, p) * cm.b) % p;
              dy.a = (dy.a + reduce_mod(t.ey, p) * cm.a) % p;
              dy.b = (dy.b + reduce_mod(t.ey, p) * cm.b) % p;
            }
            if (f2zero(ctx, dx) && f2zero(ctx, dy)) {
              return "(" + std::to_string(xa) + "+" + std::to_string(xb) + "t, " +
                     std::to_string(ya) + "+" + std::to_string(yb) + "t)";
            }
          }
        }
      }
    }
    return std::nullopt;
  };
  if (auto wzn = scan(false)) {
    out.nondegenerate = false;
    out.checked = FieldLevel::fp;
    out.has_witness = true;
    out.witness = *wzn;
    return out;
  }
  double fp2_points = std::pow(static_cast<double>(p) * p - 1.0, 2.0);
  if (fp2_points <= static_cast<double>(budget)) {
    if (auto wzn = scan(true)) {
      out.nondegenerate = false;
      out.checked = FieldLevel::fp2;
      out.has_witness = true;
      out.witness = *wzn;
      return out;
    }
    out.nondegenerate = true;
    out.checked = FieldLevel::fp2;
  } else {
    out.nondegenerate = true;
    out.checked = FieldLevel::fp;
  }
  return out;
}

}  // namespace

NondegeneracyReport nondegenerate_check(const LaurentPoly& f, i64 p, i64 budget) {
  if (p < 3 || !is_prime(static_cast<u64>(p)))
    throw std::invalid_argument("nondegenerate_check: p must be an odd prime");
  if (f.terms.empty()) throw std::invalid_argument("nondegenerate_check: empty polynomial");
  if (f.terms.size() > 8)
    throw std::invalid_argument("nondegenerate_check: support size <= 8");
  for (const auto& t : f.terms)
    if (reduce_mod(t.coeff, p) == 0)
      throw std::invalid_argument("nondegenerate_check: coefficients must be nonzero mod p");

  std::vector<LatticePoint> hull = newton_polytope(f);
  LatticePoint origin{0, 0};
  NondegeneracyReport rep;

  auto face_terms = [&](const std::vector<LatticePoint>& face) {
    std::vector<LaurentTerm> ts;
    for (const auto& t : f.terms) {
      LatticePoint e{t.ex, t.ey};
      bool member = face.size() == 1 ? (e == face[0]) : on_segment(face[0], face[1], e);
      if (member) ts.push_back(t);
    }
    return ts;
  };

  size_t n = hull.size();
  std::vector<std::vector<LatticePoint>> faces;
  if (n == 1) {
    if (!(hull[0] == origin)) faces.push_back({hull[0]});
  } else if (n == 2) {
    // segment: the 1-face contains the origin (origin is in the point set)
    for (const auto& v : hull)
      if (!(v == origin)) faces.push_back({v});
  } else {
    for (size_t i = 0; i < n; ++i) {
      if (!(hull[i] == origin)) faces.push_back({hull[i]});
      const LatticePoint& a = hull[i];
      const LatticePoint& b = hull[(i + 1) % n];
      if (!on_segment(a, b, origin)) faces.push_back({a, b});
    }
  }
  for (const auto& face : faces) {
    FaceVerdict v = judge_face(face_terms(face), p, budget);
    v.face = face;
    rep.nondegenerate = rep.nondegenerate && v.nondegenerate;
    rep.faces.push_back(std::move(v));
  }
  return rep;
}

}  // namespace shiftconv
