#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "se2sr/elliptic.hpp"

using namespace se2sr;
using oracle::kPi;

TEST_CASE("complete integrals match frozen references") {
  CHECK(complete_K(0.8) == doctest::Approx(oracle::kK_08).epsilon(1e-15));
  CHECK(complete_K(0.5) == doctest::Approx(oracle::kK_05).epsilon(1e-15));
  CHECK(complete_E(0.5) == doctest::Approx(oracle::kE_05).epsilon(1e-15));
  CHECK(complete_K(0.0) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(complete_E(0.0) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(complete_E(1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("incomplete integrals match frozen references") {
  CHECK(incomplete_F(1.0, 0.7) == doctest::Approx(oracle::kF_1_07).epsilon(1e-15));
  CHECK(incomplete_E(1.0, 0.7) == doctest::Approx(oracle::kE_1_07).epsilon(1e-15));
  CHECK(jacobi_epsilon(1.3, 0.9) ==
        doctest::Approx(oracle::kEps_13_09).epsilon(1e-15));
}

TEST_CASE("incomplete integrals agree with Gauss-Legendre quadrature") {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    double k = 0.98 * unif(rng);
    double v = -0.49 * kPi + 0.98 * kPi * unif(rng);
    CAPTURE(k);
    CAPTURE(v);
    CHECK(incomplete_F(v, k) == doctest::Approx(oracle::F_quad(v, k)).epsilon(1e-12));
    CHECK(incomplete_E(v, k) == doctest::Approx(oracle::E_quad(v, k)).epsilon(1e-12));
  }
}

TEST_CASE("quasi-periodicity of F and E") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    double k = 0.95 * unif(rng);
    double r = -0.45 * kPi + 0.9 * kPi * unif(rng);
    int n = static_cast<int>(unif(rng) * 7) - 3;
    double K = complete_K(k);
    double E = complete_E(k);
    CHECK(incomplete_F(r + n * kPi, k) ==
          doctest::Approx(incomplete_F(r, k) + 2.0 * n * K).epsilon(1e-12));
    CHECK(incomplete_E(r + n * kPi, k) ==
          doctest::Approx(incomplete_E(r, k) + 2.0 * n * E).epsilon(1e-12));
  }
}

TEST_CASE("Legendre relation") {
  for (double k : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    double kc = std::sqrt((1.0 - k) * (1.0 + k));
    double lhs = complete_E(k) * complete_K(kc) +
                 complete_E(kc) * complete_K(k) -
                 complete_K(k) * complete_K(kc);
    CHECK(lhs == doctest::Approx(kPi / 2.0).epsilon(1e-14));
  }
}

TEST_CASE("Jacobi functions: algebraic identities on random points") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    double k = 0.999 * unif(rng);
    double p = -12.0 + 24.0 * unif(rng);
    AmSnCnDn w = jacobi_am_sn_cn_dn(p, k);
    CAPTURE(k);
    CAPTURE(p);
    CHECK(std::fabs(w.sn * w.sn + w.cn * w.cn - 1.0) < 1e-12);
    CHECK(std::fabs(w.dn * w.dn - (1.0 - k * k * w.sn * w.sn)) < 1e-12);
    CHECK(w.sn == doctest::Approx(std::sin(w.am)).epsilon(1e-12));
    CHECK(w.cn == doctest::Approx(std::cos(w.am)).epsilon(1e-12));
    CHECK(w.dn >= std::sqrt((1.0 - k) * (1.0 + k)) - 1e-12);
  }
}

TEST_CASE("am is the inverse of F on the unreduced branch") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    double k = 0.995 * unif(rng);
    double v = -3.0 * kPi + 6.0 * kPi * unif(rng);
    double p = incomplete_F(v, k);
    CHECK(jacobi_am_sn_cn_dn(p, k).am == doctest::Approx(v).epsilon(1e-11));
  }
}

TEST_CASE("amplitude against direct RK4 integration of dam/dp = dn") {
  for (double k : {0.2, 0.6, 0.9, 0.99}) {
    for (double p : {0.7, 2.0, 4.5, 9.0}) {
      CHECK(jacobi_am_sn_cn_dn(p, k).am ==
            doctest::Approx(oracle::am_rk4(p, k)).epsilon(1e-9));
    }
  }
}

TEST_CASE("jacobi epsilon: quasi-periodicity and derivative consistency") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    double k = 0.05 + 0.93 * unif(rng);
    double p = -4.0 + 8.0 * unif(rng);
    double K = complete_K(k);
    double E = complete_E(k);
    CHECK(jacobi_epsilon(p + 2.0 * K, k) ==
          doctest::Approx(jacobi_epsilon(p, k) + 2.0 * E).epsilon(1e-11));
    // d(eps)/dp = dn^2
    double h = 1e-6;
    double fd = (jacobi_epsilon(p + h, k) - jacobi_epsilon(p - h, k)) / (2.0 * h);
    double dn = jacobi_am_sn_cn_dn(p, k).dn;
    CHECK(fd == doctest::Approx(dn * dn).epsilon(1e-7));
  }
}

TEST_CASE("degenerate moduli") {
  // k = 0: trigonometric limit.
  AmSnCnDn w = jacobi_am_sn_cn_dn(1.234, 0.0);
  CHECK(w.am == doctest::Approx(1.234));
  CHECK(w.dn == doctest::Approx(1.0));
  CHECK(incomplete_F(0.7, 0.0) == doctest::Approx(0.7));
  CHECK(incomplete_E(0.7, 0.0) == doctest::Approx(0.7));
  // k = 1: hyperbolic limit.
  AmSnCnDn h = jacobi_am_sn_cn_dn(0.9, 1.0);
  CHECK(h.sn == doctest::Approx(std::tanh(0.9)).epsilon(1e-14));
  CHECK(h.cn == doctest::Approx(1.0 / std::cosh(0.9)).epsilon(1e-14));
  CHECK(incomplete_F(0.9, 1.0) == doctest::Approx(std::atanh(std::sin(0.9))).epsilon(1e-14));
  CHECK(incomplete_E(0.9, 1.0) == doctest::Approx(std::sin(0.9)).epsilon(1e-14));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(complete_K(1.0), std::domain_error);
  CHECK_THROWS_AS(complete_K(-0.1), std::domain_error);
  CHECK_THROWS_AS(complete_E(1.5), std::domain_error);
  CHECK_THROWS_AS(incomplete_F(2.0, 1.0), std::domain_error);  // diverges
  CHECK_THROWS_AS(jacobi_epsilon(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(jacobi_am_sn_cn_dn(1.0, std::nan("")), std::domain_error);
}
