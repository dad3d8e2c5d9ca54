#pragma once

// Vertical subsystem of the normal Hamiltonian flow: a mathematical pendulum
//   gamma' = c,   c' = -sin(gamma)
// on the cylinder C = (2 S^1_gamma) x R_c, gamma taken modulo 4*pi.
// The cylinder decomposes by the energy EE = c^2/2 - cos(gamma) into
//   C1: oscillating pendulum,      EE in (-1, 1)
//   C2: rotating pendulum,         EE > 1
//   C3: separatrix,                EE = 1 (excluding the unstable equilibria)
//   C4: stable equilibria          (0, 0), (2*pi, 0)
//   C5: unstable equilibria        (pi, 0), (3*pi, 0)
// and each stratum is rectified by Jacobi elliptic coordinates (k, phi).

#include <string>

#include "se2sr/elliptic.hpp"

namespace se2sr {

// Width of the band around the separatrix / equilibria treated as exact.
inline constexpr double kStratifyTol = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
inline constexpr double kFourPi = 12.56637061435917295385;

// Initial covector (vertical part): pendulum state at s = 0.
struct Covector {
  double gamma;  // stored canonically in [0, 4*pi)
  double c;
};

enum class Stratum { C1, C2, C3, C4, C5 };

// Stratum plus connected component:
//   C1: component 0 <=> cos(gamma/2) > 0, i.e. gamma in (-pi, pi) mod 4*pi;
//       component 1 is the mirror well around gamma = 2*pi.
//   C2: component 0 <=> c > 0, component 1 <=> c < 0.
//   C3: component = i + 2*(c < 0) where i indexes the branch as in C1.
//   C4: component 0 = (0, 0), component 1 = (2*pi, 0).
//   C5: component 0 = (pi, 0), component 1 = (3*pi, 0).
struct StratumTag {
  Stratum stratum;
  int component;
};

// Elliptic coordinates of a covector.  For C1/C3 the pair (k, phi) is used;
// for C2 the rescaled phase psi = phi / k is the natural argument and both
// are stored (phi = k * psi).  For C1, s1 = +1 on component 0, -1 on 1.
struct EllipticCoords {
  double k;
  double phi;
  double psi;
};

struct MidpointParams {
  double tau;  // tau = phi + t/2   (C2: tau = psi + t/(2k))
  double p;    // p   = t/2         (C2: p   = t/(2k))
};

// Wraps gamma into the canonical window [0, 4*pi).
double canonical_gamma(double gamma);

// Pendulum energy EE = c^2/2 - cos(gamma).
double energy(const Covector& lam);

// Assigns the stratum and component, with |EE - 1| <= kStratifyTol (and the
// corresponding windows around the equilibria) collapsed onto C3/C4/C5.
StratumTag stratify(const Covector& lam);

std::string to_string(const StratumTag& tag);

// Elliptic coordinates of lam.  Throws std::domain_error on C4/C5 (the
// equilibria carry no phase).  The overload taking a precomputed tag avoids
// re-stratifying.
EllipticCoords to_elliptic(const Covector& lam);
EllipticCoords to_elliptic(const Covector& lam, const StratumTag& tag);

// Inverse map: covector with the given elliptic coordinates on the given
// stratum/component.  For C2 the psi field is the authoritative phase.
Covector from_elliptic(const StratumTag& tag, const EllipticCoords& ec);

// Exact pendulum flow for time t (closed elliptic forms; constants on C4/C5).
Covector pendulum_flow(const Covector& lam, double t);

// Midpoint parametrization (tau, p) of the endpoint map at time t.
MidpointParams midpoint_params(const Covector& lam, double t);
MidpointParams midpoint_params(const StratumTag& tag, const EllipticCoords& ec,
                               double t);

}  // namespace se2sr
