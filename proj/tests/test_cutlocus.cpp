#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "se2sr/cutlocus.hpp"
#include "se2sr/elliptic.hpp"
#include "se2sr/expmap.hpp"
#include "se2sr/jacobian.hpp"

using namespace se2sr;

TEST_CASE("cut time per stratum") {
  // Oscillating: 2K(k).  gamma = pi/3, c = 0 has k = 0.5.
  CHECK(cut_time({kPi / 3.0, 0.0}).value ==
        doctest::Approx(2.0 * oracle::kK_05).epsilon(1e-13));
  // Rotating: 2 k p11(k).  gamma = pi, c = sqrt(12) has k = 0.5.
  CHECK(cut_time({kPi, std::sqrt(12.0)}).value ==
        doctest::Approx(oracle::kP11_05).epsilon(1e-12));
  // Separatrix and saddles: no cut.
  double g = 1.2, c = 2.0 * std::cos(0.6);
  CHECK(std::isinf(cut_time({g, c}).value));
  CHECK(std::isinf(cut_time({kPi, 0.0}).value));
  // Stable equilibria: rotation meets its double at pi.
  CHECK(cut_time({0.0, 0.0}).value == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(cut_time({kTwoPi, 0.0}).value == doctest::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("cut time never exceeds conjugate time on C2") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 150; ++i) {
    double k = 0.05 + 0.92 * unif(rng);
    double K = complete_K(k);
    double psi = -2.0 * K + 4.0 * K * unif(rng);
    Covector lam = from_elliptic({Stratum::C2, i % 2}, {k, k * psi, psi});
    CHECK(cut_time(lam).value <= conj_time(lam) + 1e-9);
  }
}

TEST_CASE("v11 pins") {
  for (const auto& pin : oracle::kV11Pins) {
    CAPTURE(pin.k);
    CHECK(v11(pin.k) == doctest::Approx(pin.v).epsilon(1e-12));
  }
  CHECK(v11(0.0) == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(v11(1.0) == doctest::Approx(kPi / 2.0).epsilon(1e-10));
}

TEST_CASE("v11 is a root of the defining function and decreasing in k") {
  double prev = kPi + 0.1;
  for (double k : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95}) {
    double v = v11(k);
    CHECK(v < prev);
    prev = v;
    double h =
        incomplete_E(v, k) - incomplete_F(v, k) -
        std::sqrt(1.0 - k * k * std::sin(v) * std::sin(v)) * std::tan(v);
    CAPTURE(k);
    CHECK(std::fabs(h) < 1e-10);
  }
}

TEST_CASE("k11 inverts the restriction angle") {
  CHECK(k11(kPi / 2.0) == doctest::Approx(oracle::kK11_HalfPi).epsilon(1e-12));
  for (double th : {0.3, 1.0, 2.0, 2.9}) {
    double k = k11(th);
    double v = v11(k);
    CHECK(2.0 * std::asin(k * std::sin(v)) == doctest::Approx(th).epsilon(1e-10));
  }
  CHECK(k11(1e-4) == doctest::Approx(oracle::kK11_1em4).epsilon(1e-9));
}

TEST_CASE("cut locus boundary curves at theta = pi/2") {
  CHECK(R11_curve(kPi / 2.0) == doctest::Approx(oracle::kR11_HalfPi).epsilon(1e-12));
  CHECK(R12_curve(kPi / 2.0) == doctest::Approx(oracle::kR12_HalfPi).epsilon(1e-12));
}

TEST_CASE("R11 small-angle asymptote") {
  double th = 1e-4;
  CHECK(R11_curve(th) == doctest::Approx(oracle::kR11_1em4).epsilon(2e-4));
  // Leading coefficient cbrt(pi): the ratio against cbrt(pi) theta^(2/3)
  // approaches 1.
  double ratio = R11_curve(1e-3) / (std::cbrt(kPi) * std::pow(1e-3, 2.0 / 3.0));
  CHECK(ratio == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("R11 diverges at theta = pi; R12 stays finite") {
  CHECK(std::isinf(R11_curve(kPi)));
  CHECK(R12_curve(3.1) < 8.0);
  CHECK_THROWS_AS(R12_curve(kPi), std::domain_error);
  CHECK_THROWS_AS(R12_curve(-0.1), std::domain_error);
}

TEST_CASE("local boundary dominates the Maxwell onset curve") {
  for (int i = 1; i < 100; ++i) {
    double th = 0.01 + (kPi - 0.02) * i / 100.0;
    CAPTURE(th);
    CHECK(R12_curve(th) < R11_curve(th));
  }
}

TEST_CASE("reflections form the dihedral-free group Z2^3") {
  Pose q{0.43, -0.91, 2.17};
  for (int a = 1; a <= 7; ++a) {
    // involutive
    Pose twice = reflect_pose(reflect_pose(q, a), a);
    CHECK(std::fabs(twice.x - q.x) < 1e-15);
    CHECK(std::fabs(twice.y - q.y) < 1e-15);
    CHECK(std::fabs(std::remainder(twice.theta - q.theta, kTwoPi)) < 1e-15);
    for (int b = 1; b <= 7; ++b) {
      Pose lhs = reflect_pose(reflect_pose(q, b), a);
      Pose rhs = (a ^ b) == 0 ? q : reflect_pose(q, a ^ b);
      CHECK(std::fabs(lhs.x - rhs.x) < 1e-15);
      CHECK(std::fabs(lhs.y - rhs.y) < 1e-15);
      CHECK(std::fabs(std::remainder(lhs.theta - rhs.theta, kTwoPi)) < 1e-15);
    }
  }
}

TEST_CASE("reflections preserve rectified magnitudes") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    Pose q{-1.5 + 3.0 * unif(rng), -1.5 + 3.0 * unif(rng), kTwoPi * unif(rng)};
    RectifiedPose r = rectify(q);
    for (int a = 1; a <= 7; ++a) {
      RectifiedPose s = rectify(reflect_pose(q, a));
      CAPTURE(a);
      CHECK(std::fabs(std::fabs(s.R1) - std::fabs(r.R1)) < 1e-12);
      CHECK(std::fabs(std::fabs(s.R2) - std::fabs(r.R2)) < 1e-12);
    }
  }
}

TEST_CASE("cut classification on and off the locus") {
  // Global cut locus: any pose with theta = pi.
  CHECK(classify_cut({0.7, -0.2, kPi}).kind == CutKind::CutGlob);
  // Local cut locus, positive branch: theta in (0, pi), R2 = 0,
  // R1 beyond R11(theta).
  double th = 1.1;
  double R1 = R11_curve(th) + 0.8;
  Pose plus = unrectify({R1, 0.0, th});
  CHECK(classify_cut(plus).kind == CutKind::CutLocPlus);
  Pose minus = unrectify({-R1, 0.0, th});
  CHECK(classify_cut(minus).kind == CutKind::CutLocMinus);
  // Exactly on the transition curve: cut-conjugate point.
  Pose gamma_pt = unrectify({R11_curve(th), 0.0, th});
  CHECK(classify_cut(gamma_pt).kind == CutKind::CutConjPoint);
  // Interior points are not cut points.
  CHECK(classify_cut({0.4, 0.0, 0.0}).kind == CutKind::NotCut);
  CHECK(classify_cut(unrectify({0.5 * R12_curve(th), 0.0, th})).kind ==
        CutKind::NotCut);
  // Off the R2 = 0 plane with theta != pi: not cut.
  CHECK(classify_cut(unrectify({R1, 0.3, th})).kind == CutKind::NotCut);
}

TEST_CASE("cut classification distance diagnostic") {
  Pose on = unrectify({R11_curve(1.3) + 0.5, 0.0, 1.3});
  CutClassification cc = classify_cut(on);
  CHECK(cc.kind == CutKind::CutLocPlus);
  CHECK(cc.distance_to_locus < 1e-12);
  CutClassification off = classify_cut({0.4, 0.0, 0.0});
  CHECK(off.distance_to_locus > 0.1);
}

TEST_CASE("state stratification of landmark poses") {
  // Generic octants (indexed by signs of sin theta, R1, R2).
  CHECK(classify_state(unrectify({0.5, 0.5, 1.0})).label == "M8");
  CHECK(classify_state(unrectify({-0.5, 0.5, 1.0})).label == "M5");
  CHECK(classify_state(unrectify({-0.5, -0.5, 1.0})).label == "M6");
  CHECK(classify_state(unrectify({0.5, -0.5, 1.0})).label == "M7");
  CHECK(classify_state(unrectify({0.5, 0.5, kTwoPi - 1.0})).label == "M1");
  // theta = pi plane, open quadrant.
  CHECK(classify_state(unrectify({0.5, -0.5, kPi})).label == "M1'");
  CHECK(classify_state(unrectify({0.5, 0.5, kPi})).label == "M4'");
  // Center of everything.
  CHECK(classify_state({0.0, 0.0, kPi}).label == "M33'");
  // theta = 0 axis points; at theta = 0 the rectified pair is (R1, R2) =
  // (y, x), so x-axis poses sit on the R2 axis and vice versa.
  CHECK(classify_state({1.2, 0.0, 0.0}).label == "M45'");
  CHECK(classify_state({-1.2, 0.0, 0.0}).label == "M46'");
  CHECK(classify_state({0.0, 0.9, 0.0}).label == "M29'");
  CHECK(classify_state({0.0, -0.9, 0.0}).label == "M25'");
  // theta in (0, pi) with R2 = 0, R1 between the curves: Maxwell strip M56'.
  double th = 1.2;
  double mid = 0.5 * (R12_curve(th) + R11_curve(th));
  CHECK(classify_state(unrectify({mid, 0.0, th})).label == "M56'");
  CHECK(classify_state(unrectify({-mid, 0.0, th})).label == "M54'");
  // Below the onset curve: pre-Maxwell segment M41'.
  CHECK(classify_state(unrectify({0.5 * R12_curve(th), 0.0, th})).label ==
        "M41'");
  // Beyond the conjugate transition: M13'.
  CHECK(classify_state(unrectify({R11_curve(th) + 1.0, 0.0, th})).label ==
        "M13'");
  // On the transition curve itself: M30'.
  CHECK(classify_state(unrectify({R11_curve(th), 0.0, th})).label == "M30'");
  // Onset curve: M50'.
  CHECK(classify_state(unrectify({R12_curve(th), 0.0, th})).label == "M50'");
  // Mirror half theta in (pi, 2pi).
  double thm = kTwoPi - th;
  CHECK(classify_state(unrectify({mid, 0.0, thm})).label == "M52'");
  CHECK(classify_state(unrectify({R11_curve(th) + 1.0, 0.0, thm})).label ==
        "M9'");
  // R1 = 0 walls.
  CHECK(classify_state(unrectify({0.0, 0.7, 1.0})).label == "M42'");
  CHECK(classify_state(unrectify({0.0, -0.7, 1.0})).label == "M40'");
  CHECK(classify_state(unrectify({0.0, 0.7, kTwoPi - 1.0})).label == "M38'");
  // Vertical axis inside the domain: M44'.
  CHECK(classify_state({0.0, 0.0, 1.0}).label == "M44'");
}

TEST_CASE("state stratification near-zero tolerances") {
  // Slightly off the plane still snaps within tolerance.
  Pose q = unrectify({0.5, 1e-12, 1.3});
  CHECK(classify_state(q, 1e-9).label == "M56'");
  // Well off: open stratum.
  Pose q2 = unrectify({0.5, 1e-3, 1.3});
  CHECK(classify_state(q2, 1e-9).label[0] == 'M');
  CHECK(classify_state(q2, 1e-9).label.back() != '\'');
}
