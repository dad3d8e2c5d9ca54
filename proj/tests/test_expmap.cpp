#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "se2sr/elliptic.hpp"
#include "se2sr/expmap.hpp"
#include "se2sr/jacobian.hpp"

using namespace se2sr;

namespace {

double pose_gap(const Pose& a, const Pose& b) {
  return std::hypot(a.x - b.x, a.y - b.y) +
         std::fabs(std::remainder(a.theta - b.theta, kTwoPi));
}

}  // namespace

TEST_CASE("time zero is the identity") {
  for (const Covector& lam :
       {Covector{0.7, 0.3}, Covector{0.0, 2.5}, Covector{kPi, 0.0},
        Covector{0.0, 0.0}}) {
    Pose q = exp_map(lam, 0.0);
    CHECK(q.x == doctest::Approx(0.0));
    CHECK(q.y == doctest::Approx(0.0));
    CHECK(q.theta == doctest::Approx(0.0));
  }
}

TEST_CASE("theta canonicalization") {
  CHECK(canonical_theta(-0.5) == doctest::Approx(kTwoPi - 0.5));
  CHECK(canonical_theta(kTwoPi) == doctest::Approx(0.0));
  CHECK(canonical_theta(7.0 * kPi) == doctest::Approx(kPi));
  CHECK(canonical_theta(-0.0) == 0.0);
}

TEST_CASE("endpoint map against full RK4 integration") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 25; ++i) {
    double g0 = kFourPi * unif(rng);
    double c0 = -3.0 + 6.0 * unif(rng);
    double t = 0.5 + 7.5 * unif(rng);
    RawEndpoint got = exp_raw({g0, c0}, t, 1e-12);
    oracle::FullState ref = oracle::rk4_full(g0, c0, t, 5e-5);
    CAPTURE(g0);
    CAPTURE(c0);
    CAPTURE(t);
    CHECK(std::fabs(got.x - ref.x) < 1e-9);
    CHECK(std::fabs(got.y - ref.y) < 1e-9);
    CHECK(std::fabs(got.theta_unwrapped - ref.theta) < 1e-9);
  }
}

TEST_CASE("equilibrium covectors give rotations and lines") {
  // Stable equilibria: rotation in place.
  Pose r0 = exp_map({0.0, 0.0}, 1.3);
  CHECK(std::fabs(r0.x) < 1e-12);
  CHECK(std::fabs(r0.y) < 1e-12);
  CHECK(r0.theta == doctest::Approx(kTwoPi - 1.3).epsilon(1e-12));
  Pose r1 = exp_map({kTwoPi, 0.0}, 1.3);
  CHECK(r1.theta == doctest::Approx(1.3).epsilon(1e-12));
  // Saddles: straight lines.
  Pose l0 = exp_map({kPi, 0.0}, 2.0);
  CHECK(l0.x == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::fabs(l0.y) < 1e-12);
  CHECK(std::fabs(l0.theta) < 1e-12);
  Pose l1 = exp_map({3.0 * kPi, 0.0}, 2.0);
  CHECK(l1.x == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("unit-speed and arclength bookkeeping") {
  Trajectory traj = exp_trajectory({0.8, 0.6}, 3.0, 33, 1e-12);
  REQUIRE(traj.samples.size() == 33);
  CHECK(traj.length == doctest::Approx(3.0));
  CHECK(traj.samples.front().s == doctest::Approx(0.0));
  CHECK(traj.samples.back().s == doctest::Approx(3.0));
  double poly = 0.0;
  for (size_t i = 0; i < traj.samples.size(); ++i) {
    const TrajectorySample& smp = traj.samples[i];
    CHECK(smp.u1 * smp.u1 + smp.u2 * smp.u2 == doctest::Approx(1.0).epsilon(1e-12));
    if (i > 0) {
      const TrajectorySample& prev = traj.samples[i - 1];
      poly += std::hypot(smp.x - prev.x, smp.y - prev.y);
    }
  }
  // Chordal length converges to arclength of the planar projection from
  // below; with 32 segments it must sit within O(h^2) of integral |u1| ds.
  CHECK(poly <= 3.0 + 1e-9);
}

TEST_CASE("exp_multi validates its time grid") {
  CHECK_THROWS_AS(exp_multi({0.5, 0.1}, {1.0, 0.5}, 1e-10), std::domain_error);
  CHECK_THROWS_AS(exp_multi({0.5, 0.1}, {-1.0}, 1e-10), std::domain_error);
  std::vector<RawEndpoint> pts = exp_multi({0.5, 0.1}, {0.0, 1.0, 1.0, 2.0}, 1e-10);
  REQUIRE(pts.size() == 4);
  CHECK(pts[1].x == doctest::Approx(pts[2].x));
  CHECK(pts[0].x == 0.0);
}

TEST_CASE("rectified coordinates invert and flip") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    Pose q{-2.0 + 4.0 * unif(rng), -2.0 + 4.0 * unif(rng),
           kTwoPi * unif(rng)};
    RectifiedPose r = rectify(q);
    Pose back = unrectify(r);
    CHECK(pose_gap(q, back) < 1e-12);
    // Recentering theta by a full turn flips both rectified coordinates.
    RectifiedPose shifted = rectify({q.x, q.y, q.theta - kTwoPi});
    CHECK(shifted.R1 == doctest::Approx(-r.R1).epsilon(1e-12));
    CHECK(shifted.R2 == doctest::Approx(-r.R2).epsilon(1e-12));
  }
  // Pinned samples: theta = 0 gives (R1, R2) = (y, x); theta = pi gives
  // (-x, y).
  RectifiedPose a = rectify({0.3, 0.8, 0.0});
  CHECK(a.R1 == doctest::Approx(0.8));
  CHECK(a.R2 == doctest::Approx(0.3));
  RectifiedPose b = rectify({0.3, 0.8, kPi});
  CHECK(b.R1 == doctest::Approx(-0.3));
  CHECK(b.R2 == doctest::Approx(0.8));
}

TEST_CASE("boundary closed forms calibrate the endpoint map") {
  // Each case: reconstruct the covector whose midpoint parameters hit the
  // boundary value, run the generic endpoint map, compare with the closed
  // form.  tau = 0 cases fix phi = -p; tau = K cases fix phi = K - p.
  double worst = 0.0;
  for (double k : {0.15, 0.4, 0.65, 0.85, 0.97}) {
    double K = complete_K(k);
    for (double frac : {0.2, 0.55, 0.9, 1.25, 1.7}) {
      double p = frac * K;
      auto run = [&](BoundaryCase bc, Stratum st, double phase, double t,
                     double tau) {
        EllipticCoords ec;
        ec.k = k;
        if (st == Stratum::C1) {
          ec.phi = phase;
        } else {
          ec.psi = phase;
          ec.phi = k * phase;
        }
        Covector lam = from_elliptic({st, 0}, ec);
        Pose got = exp_map(lam, t, 1e-12);
        Pose want = boundary_closed_form(bc, p, k, tau);
        worst = std::max(worst, pose_gap(got, want));
      };
      run(BoundaryCase::C1_tau0, Stratum::C1, -p, 2.0 * p, 0.0);
      run(BoundaryCase::C1_tauK, Stratum::C1, K - p, 2.0 * p, 0.0);
      run(BoundaryCase::C2_tau0, Stratum::C2, -p, 2.0 * k * p, 0.0);
      run(BoundaryCase::C2_tauK, Stratum::C2, K - p, 2.0 * k * p, 0.0);
      // p = K family: tau sweeps, t = 2K.
      run(BoundaryCase::C1_pK, Stratum::C1, p - K, 2.0 * K, p);
      // Double boundary points.
      run(BoundaryCase::C1_pK_tau0, Stratum::C1, -K, 2.0 * K, 0.0);
      run(BoundaryCase::C1_pK_tauK, Stratum::C1, 0.0, 2.0 * K, 0.0);
    }
  }
  CHECK(worst < 1e-8);
  MESSAGE("boundary calibration worst gap: ", worst);
}

TEST_CASE("separatrix boundary closed form") {
  double worst = 0.0;
  for (double p : {0.4, 1.0, 2.2, 4.0}) {
    Covector lam = from_elliptic({Stratum::C3, 0}, {1.0, -p, -p});
    Pose got = exp_map(lam, 2.0 * p, 1e-12);
    Pose want = boundary_closed_form(BoundaryCase::C3_tau0, p, 1.0);
    worst = std::max(worst, pose_gap(got, want));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("C2 Maxwell-chart boundary closed form at p = p11") {
  double worst = 0.0;
  for (double k : {0.3, 0.6, 0.9}) {
    double p1 = p11(k);
    for (double tau : {0.3, 1.1, 2.0}) {
      Covector lam =
          from_elliptic({Stratum::C2, 0}, {k, k * (tau - p1), tau - p1});
      Pose got = exp_map(lam, 2.0 * k * p1, 1e-12);
      Pose want = boundary_closed_form(BoundaryCase::C2_p11, p1, k, tau);
      worst = std::max(worst, pose_gap(got, want));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("vertical controls match the pendulum flow") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    Covector lam{kFourPi * unif(rng), -3.0 + 6.0 * unif(rng)};
    GeodesicEvaluator ev(lam);
    for (double s : {0.0, 0.9, 2.4, 5.1}) {
      Covector fs = pendulum_flow(lam, s);
      double u1, u2, th;
      ev.vertical(s, u1, u2, th);
      CHECK(std::fabs(u1 - std::sin(0.5 * fs.gamma)) < 1e-10);
      CHECK(std::fabs(u2 + std::cos(0.5 * fs.gamma)) < 1e-10);
    }
  }
}

TEST_CASE("closed-form heading against integrated heading") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    double g0 = kFourPi * unif(rng);
    double c0 = -3.0 + 6.0 * unif(rng);
    double t = 0.5 + 6.0 * unif(rng);
    GeodesicEvaluator ev({g0, c0});
    double u1, u2, th;
    ev.vertical(t, u1, u2, th);
    oracle::FullState ref = oracle::rk4_full(g0, c0, t, 5e-5);
    CHECK(std::fabs(th - ref.theta) < 1e-9);
  }
}
