#pragma once

// Forward exponential map of the sub-Riemannian structure: integrates the
// horizontal subsystem
//   x' = sin(gamma_s/2) cos(theta),  y' = sin(gamma_s/2) sin(theta),
//   theta' = -cos(gamma_s/2)
// with the vertical pendulum solved in closed elliptic form.  theta is
// obtained in closed form as well; only (x, y) are integrated numerically.

#include <vector>

#include "se2sr/pendulum.hpp"

namespace se2sr {

// Default absolute/relative tolerance handed to the (x, y) integrator.
inline constexpr double kOdeTol = 1e-12;

// Endpoint pose; theta is stored canonically in [0, 2*pi).
struct Pose {
  double x;
  double y;
  double theta;
};

// Endpoint with the unwrapped heading (accumulated, not reduced mod 2*pi);
// used by finite-difference Jacobians where branch jumps would be fatal.
struct RawEndpoint {
  double x;
  double y;
  double theta_unwrapped;
};

// Pose in the rectified frame rotated back by half the heading:
//   R1 = y cos(theta/2) - x sin(theta/2),
//   R2 = x cos(theta/2) + y sin(theta/2).
// The pair flips sign under the branch change theta -> theta +- 2*pi.
struct RectifiedPose {
  double R1;
  double R2;
  double theta;
};

struct TrajectorySample {
  double s;
  double x;
  double y;
  double theta;
  double u1;
  double u2;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double length;  // = final time (arclength parametrization)
};

// Closed-form vertical data along the geodesic for one covector:
// u1(s) = sin(gamma_s/2), u2(s) = -cos(gamma_s/2), and the closed-form
// heading theta(s) with theta(0) = 0 (unwrapped).
class GeodesicEvaluator {
 public:
  explicit GeodesicEvaluator(const Covector& lam);

  void vertical(double s, double& u1, double& u2, double& theta) const;

  const StratumTag& tag() const { return tag_; }
  const EllipticCoords& coords() const { return ec_; }

 private:
  StratumTag tag_;
  EllipticCoords ec_{};
  double ref_{};  // theta integration constant at s = 0
};

// Endpoint of the geodesic with initial covector lam at time t >= 0.
Pose exp_map(const Covector& lam, double t, double tol = kOdeTol);

// Same endpoint with the unwrapped heading.
RawEndpoint exp_raw(const Covector& lam, double t, double tol = kOdeTol);

// Endpoints at several times along one geodesic (single integration pass;
// times must be non-decreasing and non-negative).
std::vector<RawEndpoint> exp_multi(const Covector& lam,
                                   const std::vector<double>& times,
                                   double tol = kOdeTol);

// Uniformly sampled trajectory on [0, t] with n_samples >= 2 rows.
Trajectory exp_trajectory(const Covector& lam, double t, int n_samples,
                          double tol = kOdeTol);

// Wraps an angle into [0, 2*pi).
double canonical_theta(double theta);

// Rectified frame and its inverse (theta passed through unchanged).
RectifiedPose rectify(const Pose& q);
Pose unrectify(const RectifiedPose& r);

// Closed-form endpoints on the distinguished parameter surfaces; used to
// calibrate the integrator and to seed the special-target solver.  Names
// state the stratum and the fixed coordinate of the surface.
enum class BoundaryCase {
  C1_tau0,      // tau = 0:            theta in (pi, 2pi), R2 = 0
  C1_tauK,      // tau = K:            R1 = 0
  C1_pK,        // p = K:              theta = pi, |R| = (2/k)(K - E)
  C1_pK_tau0,   // p = K, tau = 0:     theta = pi, R2 = 0
  C1_pK_tauK,   // p = K, tau = K:     theta = pi, R1 = 0
  C2_tau0,      // tau = 0:            R2 = 0
  C2_tauK,      // tau = K:            theta = 0
  C2_p11,       // p = p11(k):         R2 = 0
  C2_p11_tau0,  // p = p11(k), tau = 0
  C2_tauK_p11,  // p = p11(k), tau = K: theta = 0, R2 = 0
  C3_tau0,      // separatrix, tau = 0: R2 = 0
};

// Endpoint (exact elliptic closed form) for the given surface at parameters
// (p, k); tau is used only by the two-parameter surfaces C1_pK / C2_p11.
Pose boundary_closed_form(BoundaryCase bc, double p, double k,
                          double tau = 0.0);

}  // namespace se2sr
