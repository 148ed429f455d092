#include <doctest.h>

#include <cmath>

#include "shiftconv/exp_sums.hpp"

using namespace shiftconv;

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

TEST_CASE("gauss sum direct small values") {
  CHECK(std::abs(gauss_sum_direct(1, 0, 1) - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(gauss_sum_direct(1, 0, 3) - cplx(0, kSqrt3)) < 1e-14);
  CHECK(std::abs(gauss_sum_direct(1, 0, 2)) < 1e-14);
}

TEST_CASE("gauss magnitude law, q <= 64") {
  for (i64 q = 1; q <= 64; ++q) {
    for (i64 a = 1; a <= q; ++a) {
      if (gcd_i64(a, q) != 1) continue;
      for (i64 b = 0; b < q; ++b) {
        double mag = std::abs(gauss_sum_direct(a, b, q));
        if (q % 2 == 1) {
          CHECK(mag == doctest::Approx(std::sqrt(static_cast<double>(q))).epsilon(1e-9));
        } else {
          i64 r = q / 2;
          if ((a * r + b) % 2 == 0)
            CHECK(mag == doctest::Approx(std::sqrt(2.0 * q)).epsilon(1e-9));
          else
            CHECK(mag < 1e-9 * std::sqrt(2.0 * q));
        }
      }
    }
  }
}

TEST_CASE("gauss fast equals direct") {
  // multiplicative example and a 2-power times odd sweep
  CHECK(std::abs(gauss_sum_fast(1, 0, 15) - gauss_sum_direct(1, 0, 15)) < 1e-12);
  CHECK(std::abs(gauss_sum_fast(1, 2, 9) - gauss_sum_direct(1, 2, 9)) < 1e-12);
  for (i64 q = 1; q <= 128; ++q) {
    for (i64 a = 1; a <= q; ++a) {
      if (gcd_i64(a, q) != 1) continue;
      for (i64 b : {static_cast<i64>(0), static_cast<i64>(1), q / 2, q - 1}) {
        cplx d = gauss_sum_direct(a, b, q);
        cplx f = gauss_sum_fast(a, b, q);
        CHECK(std::abs(d - f) < 1e-9 * std::max(1.0, std::abs(d)));
      }
    }
  }
  CHECK_THROWS_AS(gauss_sum_fast(2, 0, 4), std::invalid_argument);
}

TEST_CASE("gauss batch equals one-shot") {
  for (i64 q : {7, 12, 31, 48}) {
    for (i64 a = 1; a < q; ++a) {
      if (gcd_i64(a, q) != 1) continue;
      auto all = gauss_sum_direct_all_b(a, q);
      for (i64 b = 0; b < q; b += std::max<i64>(1, q / 5))
        CHECK(std::abs(all[static_cast<size_t>(b)] - gauss_sum_direct(a, b, q)) < 1e-12);
    }
  }
}

TEST_CASE("kloosterman") {
  CHECK(std::abs(kloosterman(2, 5, 1) - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(kloosterman(1, 1, 3) - cplx(-1, 0)) < 1e-12);
  for (i64 c : {1, 2, 6, 10, 12, 36}) {
    CHECK(std::abs(kloosterman(0, 0, c) -
                   cplx(static_cast<double>(euler_phi(static_cast<u64>(c))), 0)) < 1e-10);
  }
  // real-valuedness (conjugate symmetry of the unit sum) and m/n symmetry
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    i64 c = rng.uniform(2, 200);
    i64 m = rng.uniform(-50, 50), n = rng.uniform(-50, 50);
    cplx s = kloosterman(m, n, c);
    CHECK(std::abs(s.imag()) < 1e-9);
    CHECK(std::abs(s - kloosterman(n, m, c)) < 1e-9);
  }
}

TEST_CASE("kloosterman weil bound") {
  Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    i64 c = rng.uniform(1, 300);
    i64 m = rng.uniform(-300, 300), n = rng.uniform(-300, 300);
    i64 g = gcd_i64(gcd_i64(m, n), c);
    if (g == 0) g = c;
    double bound = static_cast<double>(tau(static_cast<u64>(c))) *
                   std::sqrt(static_cast<double>(g)) * std::sqrt(static_cast<double>(c));
    CHECK(std::abs(kloosterman(m, n, c)) <= bound + 1e-9);
  }
}

TEST_CASE("salie values") {
  CHECK(std::abs(salie(1, 1, 3) - cplx(0, -kSqrt3)) < 1e-12);
  CHECK_THROWS_AS(salie(1, 1, 9), std::invalid_argument);
  CHECK_THROWS_AS(salie(1, 1, 2), std::invalid_argument);

  // vanishing when (mn/p) = -1, magnitude bound 2 sqrt p throughout
  for (i64 p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                61, 67, 71, 73, 79, 83, 89, 97}) {
    for (i64 m = 1; m < p; m += std::max<i64>(1, p / 7)) {
      for (i64 n = 1; n < p; n += std::max<i64>(1, p / 7)) {
        cplx s = salie(m, n, p);
        CHECK(std::abs(s) <= 2.0 * std::sqrt(static_cast<double>(p)) + 1e-9);
        if (jacobi_symbol(m * n, p) == -1) CHECK(std::abs(s) < 1e-9);
      }
    }
  }
}

TEST_CASE("salie twisted gauss degenerate case") {
  for (i64 p : {5, 7, 11, 13}) {
    for (i64 n = 1; n < p; ++n) {
      cplx s = salie(0, n, p);
      cplx expected = static_cast<double>(jacobi_symbol(n, p)) * epsilon_q(p) *
                      std::sqrt(static_cast<double>(p));
      CHECK(std::abs(s - expected) < 1e-10);
    }
  }
}

TEST_CASE("sum of squares counts") {
  CHECK(sum_of_squares_count(0, 3) == 1);
  CHECK(sum_of_squares_count(1, 3) == 6);
  CHECK(sum_of_squares_count(7, 3) == 0);
  for (i64 n = 0; n <= 50; ++n) {
    i64 r = sum_of_squares_count(n, 1);
    i64 s = static_cast<i64>(std::sqrt(static_cast<double>(n)) + 0.5);
    if (n == 0)
      CHECK(r == 1);
    else
      CHECK(r == (s * s == n ? 2 : 0));
  }
}

TEST_CASE("sum of squares table vs per-n") {
  for (int ell = 1; ell <= 4; ++ell) {
    auto table = sum_of_squares_table(10, ell);
    for (i64 n = 0; n <= 10; ++n)
      CHECK(table[static_cast<size_t>(n)] == sum_of_squares_count(n, ell));
  }
  CHECK_THROWS_AS(sum_of_squares_table(90'000'000, 3), std::invalid_argument);
}

TEST_CASE("r3 vanishing exactly on 4^a(8b+7)") {
  auto r3 = sum_of_squares_table(100'000, 3);
  for (i64 n = 1; n <= 100'000; ++n) {
    i64 m = n;
    while (m % 4 == 0) m /= 4;
    if (m % 8 == 7)
      CHECK(r3[static_cast<size_t>(n)] == 0);
    else
      CHECK(r3[static_cast<size_t>(n)] > 0);
  }
}

TEST_CASE("theta sum") {
  CHECK(std::abs(theta_sum(0.0, 100.0) - cplx(21, 0)) < 1e-12);
  CHECK(std::abs(theta_sum(0.5, 4.0) - cplx(1, 0)) < 1e-12);
  Rng rng(31);
  for (int i = 0; i < 40; ++i) {
    double alpha = rng.real01();
    double X = 1.0 + rng.real01() * 400.0;
    i64 M = static_cast<i64>(std::floor(std::sqrt(X)));
    cplx expect = 0;
    for (i64 m = -M; m <= M; ++m)
      expect += unit_phase(alpha * static_cast<double>(m) * static_cast<double>(m));
    CHECK(std::abs(theta_sum(alpha, X) - expect) < 1e-10 * (2 * M + 1));
    CHECK(std::abs(theta_sum(-alpha, X) - std::conj(theta_sum(alpha, X))) < 1e-10);
    CHECK(std::abs(theta_sum(alpha + 1.0, X) - theta_sum(alpha, X)) < 1e-9);
  }
}

TEST_CASE("weighted exponential sum") {
  TestFunction phi = TestFunction::canonical_bump();

  // insufficient file-backed range triggers the coefficient-range error
  std::vector<double> v(10, 1.0);
  write_sequence_file("/tmp/short_seq.txt", 1, v);
  CoefficientSequence shortseq = ingest_coefficients("/tmp/short_seq.txt");
  CHECK_THROWS_AS(weighted_exp_sum(0.1, ThetaSumParams(64.0, 3), shortseq, phi),
                  std::out_of_range);

  // alpha = 0, A = 1: the plain weight sum
  CoefficientSequence ones = CoefficientSequence::ones();
  cplx w0 = weighted_exp_sum(0.0, ThetaSumParams(64.0, 0), ones, phi);
  double expect = 0;
  for (i64 n = 32; n <= 64; ++n) expect += phi(n / 64.0);
  CHECK(std::abs(w0 - cplx(expect, 0)) < 1e-10);

  // generic alpha with tau3 against a direct oracle
  CoefficientSequence t3 = CoefficientSequence::tau3_seq();
  double alpha = 0.217;
  cplx got = weighted_exp_sum(alpha, ThetaSumParams(100.0, 5), t3, phi);
  cplx want = 0;
  for (i64 n = 50; n <= 100; ++n)
    want += static_cast<double>(tau3(static_cast<u64>(n + 5))) * phi(n / 100.0) *
            unit_phase(-alpha * static_cast<double>(n));
  CHECK(std::abs(got - want) < 1e-9);
}
