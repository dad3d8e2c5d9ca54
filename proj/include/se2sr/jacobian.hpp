#pragma once

// Closed-form Jacobian determinants J = det d(x,y,theta)/d(t,phi,k) of the
// exponential map in the midpoint parametrization (tau, p), and the first
// conjugate time.  Conjugate points exist only for rotating-pendulum
// covectors (C2); everywhere else conj_time = +inf.

#include "se2sr/pendulum.hpp"

namespace se2sr {

struct JacobianEval {
  double J;          // full determinant (prefactor * core)
  double J_core;     // J1 on C1, J2 on C2 — carries the sign analysis
  double prefactor;  // 4/(k^3 (1-k^2) Delta) on C1, -4k/((1-k^2) Delta) on C2
};

// Root-bearing auxiliary functions of (p, k); E below is Jacobi epsilon.
double f1(double p, double k);        // cn (eps - p) - dn sn
double f2(double p, double k);        // k^2 cn sn + dn (p - eps)
double phi_aux(double p, double k);   // sn dn - (2 eps - p) cn
double alpha1(double p, double k);    // cn dn (p - 2 eps) + sn (dn^2 + eps(p - eps))
double beta1(double p, double k);     // cn eps - dn sn

// Jacobian cores in midpoint coordinates.
double J1(double tau, double p, double k);
double J2(double tau, double p, double k);

// Full determinant with the stratum prefactor; stratum must be C1 or C2.
JacobianEval J_full(Stratum stratum, double tau, double p, double k);

// First positive root of f1; lies in (K, 2K], p11(0) = pi.
double p11(double k);

// First positive root of alpha1.
double p1alpha1(double k);

// Unique root of 2E(k) - K(k); the conjugate-bound branch switch (~0.909).
double k0();

// First conjugate time along the geodesic from lam; +inf off C2.
double conj_time(const Covector& lam);

}  // namespace se2sr
