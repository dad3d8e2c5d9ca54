#pragma once

// Cut time, the cut-locus boundary curves R1^1 and R1^2 in the rectified
// (theta, R1) plane, classification of target poses relative to the cut
// locus, the state-space stratification (open octants plus the boundary
// sets), and the discrete reflection symmetries acting on poses.

#include <string>

#include "se2sr/expmap.hpp"
#include "se2sr/jacobian.hpp"

namespace se2sr {

struct CutTime {
  double value;  // +inf exactly on C3 and C5
};

enum class CutKind { CutGlob, CutLocPlus, CutLocMinus, CutConjPoint, NotCut };

struct CutClassification {
  CutKind kind;
  double distance_to_locus;  // rough diagnostic, not a metric distance
};

// Stratum of the target space: open octants M1..M8 cut out by the signs of
// (sin theta, R1, R2), and the boundary sets M1'..M58' on the surfaces
// {theta = 0}, {theta = pi}, {R1 = 0}, {R2 = 0}.  Coinciding primed sets
// are reported under the smallest index ("M1'" for M1' = M6').
struct StateStratum {
  std::string label;
  int sign_sin_theta;  // -1, 0, +1
  int sign_R1;
  int sign_R2;
};

// Time where the geodesic from lam stops being globally optimal.
CutTime cut_time(const Covector& lam);

// Lower cut-locus boundary curve R1^2(theta) = 2(artanh(sin(theta/2)) -
// sin(theta/2)) for theta in [0, pi); domain error at theta >= pi.
double R12_curve(double theta);

// First root v1^1(k) in (pi/2, pi] of
//   h1(v, k) = E(v,k) - F(v,k) - sqrt(1 - k^2 sin^2 v) tan v.
double v11(double k);

// Inverse modulus of the upper-curve parametrization
// theta(k) = 2 arcsin(k sin v1^1(k)); monotone, k11(0) = 0, k11(pi) = 1.
double k11(double theta);

// Upper cut-locus boundary curve R1^1(theta) = 2(F - E)(v1^1(k), k) at
// k = k11(theta); +inf at theta = pi.  Below theta = 1e-6 the cube-root
// asymptotic cbrt(pi) * theta^(2/3) is used (see README on the constant).
double R11_curve(double theta);

// Classifies q against the three cut-locus components; tolerances on the
// defining equalities are tol scaled by (1 + |q|).
CutClassification classify_cut(const Pose& q, double tol = 1e-9);

// Stratum of q per the sign-triple octants and the boundary tables.
StateStratum classify_state(const Pose& q, double tol = 1e-9);

// Action of the i-th reflection (i = 1..7) on a pose, performed in the
// rectified frame:  each reflection flips a subset of {R1, R2} and may send
// theta -> 2*pi - theta; together with the identity they form Z2 x Z2 x Z2.
Pose reflect_pose(const Pose& q, int i);

}  // namespace se2sr
