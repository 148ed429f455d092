#include <doctest.h>

#include <cmath>

#include "shiftconv/circle.hpp"
#include "shiftconv/shifted_conv.hpp"

using namespace shiftconv;

TEST_CASE("farey dissection basics") {
  auto arcs1 = farey_dissection(1);
  REQUIRE(arcs1.size() == 1);
  CHECK(arcs1[0].a == 1);
  CHECK(arcs1[0].q == 1);
  CHECK(arcs1[0].left == Rat(1, 2));
  CHECK(arcs1[0].right == Rat(3, 2));

  auto arcs5 = farey_dissection(5);
  i64 phi_sum = 0;
  for (i64 q = 1; q <= 5; ++q) phi_sum += static_cast<i64>(euler_phi(static_cast<u64>(q)));
  CHECK(arcs5.size() == static_cast<size_t>(phi_sum));
  CHECK(arcs5.size() == 10);
}

TEST_CASE("farey tiling and neighbor congruences") {
  for (i64 Q : {1, 2, 3, 5, 8, 21, 60}) {
    auto arcs = farey_dissection(Q);
    for (size_t i = 0; i < arcs.size(); ++i) {
      const FareyArc& arc = arcs[i];
      // congruences a q' = 1, a q'' = -1 (mod q), denominators in (Q-q, Q]
      CHECK(((arc.a * arc.q_left) % arc.q + arc.q) % arc.q == 1 % arc.q);
      CHECK(((arc.a * arc.q_right) % arc.q + arc.q) % arc.q ==
            ((arc.q - 1) % arc.q + arc.q) % arc.q);
      CHECK(arc.q_left > Q - arc.q);
      CHECK(arc.q_left <= Q);
      CHECK(arc.q_right > Q - arc.q);
      CHECK(arc.q_right <= Q);
      if (i + 1 < arcs.size()) CHECK(arc.right == arcs[i + 1].left);
    }
    // exact measure: telescoped total equals 1
    Rat total = arcs.back().right - arcs.front().left;
    CHECK(total == Rat(1, 1));
    CHECK(arcs.front().left == Rat(1, Q + 1));
  }
}

TEST_CASE("gauss fresnel integral") {
  CHECK(std::abs(gauss_fresnel_integral(0.0, 100.0) - cplx(10, 0)) < 1e-14);
  cplx plus = gauss_fresnel_integral(0.37, 50.0);
  cplx minus = gauss_fresnel_integral(-0.37, 50.0);
  CHECK(std::abs(plus - std::conj(minus)) < 1e-12);

  // quadrature oracle at two mesh levels, spanning both evaluation branches
  for (double beta : {0.031, 0.4, 1.0, 7.3}) {
    for (double X : {1.0, 9.0, 144.0}) {
      cplx got = gauss_fresnel_integral(beta, X);
      double T = std::sqrt(X);
      auto f = [beta](double u) { return unit_phase(beta * u * u); };
      int panels = static_cast<int>(3.0 * beta * T * T) + 50;
      cplx o1 = integrate_panels(f, 0, T, panels);
      cplx o2 = integrate_panels(f, 0, T, 2 * panels);
      REQUIRE(std::abs(o1 - o2) < 1e-10);
      CHECK(std::abs(got - o2) < 1e-9 * std::max(1.0, std::abs(o2)));
    }
  }
}

TEST_CASE("gauss fresnel envelope") {
  // |Psi_0(beta)| <= min(sqrt X, c / sqrt |beta|) with a measured constant
  double c_measured = 0;
  for (double X : {100.0, 1000.0, 10000.0}) {
    for (double beta : {1e-4, 1e-3, 1e-2, 0.1, 0.9}) {
      double mag = std::abs(gauss_fresnel_integral(beta, X));
      CHECK(mag <= std::sqrt(X) + 1e-9);
      c_measured = std::max(c_measured, mag * std::sqrt(beta));
    }
  }
  // the half-line limit is 1/(2 sqrt(2 beta)); the measured constant sits nearby
  CHECK(c_measured < 0.85);
}

TEST_CASE("poisson kernel identities") {
  for (double beta : {0.0, 0.002, -0.03}) {
    cplx k0 = poisson_kernel(0, 7, beta, 400.0);
    cplx want = 2.0 / 7.0 * gauss_fresnel_integral(beta, 400.0);
    CHECK(std::abs(k0 - want) < 1e-10);
  }
  for (i64 b : {1, 2, -3}) {
    cplx k = poisson_kernel(b, 5, 0.0, 300.0);
    double want = std::sin(kTwoPi * b * std::sqrt(300.0) / 5.0) / (kPi * b);
    CHECK(std::abs(k - cplx(want, 0)) < 1e-12);
  }
  // generic values against direct quadrature of the defining integral
  Rng rng(41);
  for (int i = 0; i < 25; ++i) {
    i64 q = rng.uniform(1, 40);
    i64 b = rng.uniform(-3 * q / 2 + 1, 3 * q / 2);
    double X = 100.0 + rng.real01() * 900.0;
    double beta = (rng.real01() - 0.5) * 2.0 / (static_cast<double>(q) * 5.0 * std::sqrt(X));
    cplx got = poisson_kernel(b, q, beta, X);
    double T = std::sqrt(X);
    double cyc = std::abs(beta) * X + 2.0 * std::abs(b) * T / q + 2;
    cplx oracle = integrate_oscillatory(
                      [&](double t) {
                        return unit_phase(beta * t * t -
                                          static_cast<double>(b) * t / static_cast<double>(q));
                      },
                      -T, T, cyc) /
                  static_cast<double>(q);
    CHECK(std::abs(got - oracle) < 1e-8 * std::max(1.0, std::abs(oracle)));
  }
}

TEST_CASE("poisson kernel row sums stay logarithmic") {
  double X = 10000.0;
  i64 Q = 500;
  double c_measured = 0;
  Rng rng(43);
  for (int i = 0; i < 30; ++i) {
    i64 q = rng.uniform(1, Q);
    double beta_max = 1.0 / (static_cast<double>(q) * static_cast<double>(Q));
    double beta = (i % 3 == 0) ? 0.0 : (rng.real01() * 2.0 - 1.0) * beta_max;
    double s = poisson_kernel_row_sum(q, beta, X);
    c_measured = std::max(c_measured, s / std::log(static_cast<double>(q) + 2.0));
  }
  CHECK(c_measured < 3.0);
}

TEST_CASE("theta decomposition residual") {
  for (double X : {100.0, 1000.0, 5000.0}) {
    double r = theta_decomposition_residual(1, 1, 0.0, X);
    CHECK(r <= 3.0);
  }
  CHECK_THROWS_AS(theta_decomposition_residual(2, 4, 0.0, 100.0), std::invalid_argument);
  CHECK_THROWS_AS(theta_decomposition_residual(1, 90, 0.0, 100.0), std::invalid_argument);
  CHECK_THROWS_AS(theta_decomposition_residual(1, 3, 0.9, 100.0), std::invalid_argument);

  double X = 10000.0;
  i64 Q = 500;
  Rng rng(47);
  double c_measured = 0;
  for (int i = 0; i < 25; ++i) {
    i64 q = rng.uniform(1, 60);
    i64 a = rng.uniform(1, q);
    if (gcd_i64(a, q) != 1) continue;
    double bmax = 1.0 / (static_cast<double>(q) * Q);
    double beta = (i % 4 == 0) ? bmax : (rng.real01() * 2 - 1) * bmax;
    double r = theta_decomposition_residual(a, q, beta, X);
    c_measured = std::max(c_measured, r / std::log(q + 2.0));
  }
  CHECK(c_measured < 6.0);
}

TEST_CASE("circle integral equals the direct sum") {
  TestFunction phi = TestFunction::canonical_bump();
  CoefficientSequence ones = CoefficientSequence::ones();
  CoefficientSequence t3 = CoefficientSequence::tau3_seq();

  {
    cplx got = circle_integral(64, 0, ones, phi);
    double want = 0;
    for (i64 n = 32; n <= 64; ++n)
      want += static_cast<double>(sum_of_squares_count(n, 3)) * phi(n / 64.0);
    CHECK(std::abs(got.imag()) < 1e-8 * std::max(1.0, std::abs(got)));
    CHECK(std::abs(got.real() - want) < 1e-6 * std::max(1.0, std::abs(want)));
  }
  {
    cplx got = circle_integral(1024, 5, t3, phi);
    double want = shifted_convolution_direct(1024, 5, t3, phi);
    CHECK(std::abs(got.real() - want) / std::max(std::abs(want), 1.0) < 1e-6);
    // sampling-count robustness: N = 4X+2 and N = 8X agree
    cplx dense = circle_integral(1024, 5, t3, phi, 8 * 1024);
    CHECK(std::abs(got - dense) < 1e-9 * std::max(1.0, std::abs(got)));
  }
  CHECK_THROWS_AS(circle_integral(64, 0, ones, phi, 100), std::invalid_argument);
}
