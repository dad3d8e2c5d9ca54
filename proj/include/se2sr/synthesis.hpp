#pragma once

// Inverse exponential map and optimal synthesis: for a target pose, the one
// or two globally optimal geodesics reaching it, and the sub-Riemannian
// distance.  Closed-form constructions cover the special target families
// (axes and the theta = pi plane); everything else goes through a
// multi-start damped Newton shooting solver seeded from a precomputed
// endpoint table over the covector cylinder.

#include <optional>
#include <vector>

#include "se2sr/cutlocus.hpp"

namespace se2sr {

inline constexpr double kSolverTol = 1e-9;

struct GeodesicSolution {
  Covector lambda;
  double t;
  Trajectory trajectory;
  double endpoint_residual;
  bool certificate;  // t <= cut_time(lambda) + tol
};

enum class Multiplicity { Unique, MaxwellPair };

struct SynthesisResult {
  std::vector<GeodesicSolution> solutions;  // length 1 or 2 (0 only for q0)
  double distance;
  Multiplicity multiplicity_kind;
  // Set for targets on the curve Gamma = closure boundary of the local cut
  // locus, where the preimage is unique but the Jacobian degenerates.
  bool conditioning_warning = false;
};

// Closed-form synthesis for the special target families:
//   (x!=0, 0, 0)        straight line
//   (0, 0, theta),      |theta| < pi        in-place rotation
//   (0, 0, pi)          two rotations
//   (x!=0, 0, pi), (0, y!=0, pi), general (x,y) != 0 with theta = pi
//   (0, y!=0, 0)        two rotating-pendulum solutions
//   (x!=0, y!=0, 0)     unique rotating-pendulum solution
// Returns nullopt when q matches no family.
std::optional<SynthesisResult> solve_special(const Pose& q);

// Multi-start shooting solver; works for any target != q0.
SynthesisResult solve_generic(const Pose& q, double tol = kSolverTol);

// Special-family fast path with generic fallback; q0 yields distance 0 with
// no solutions.
SynthesisResult solve(const Pose& q, double tol = kSolverTol);

// Sub-Riemannian distance d(q0, q).
double distance(const Pose& q);

}  // namespace se2sr
