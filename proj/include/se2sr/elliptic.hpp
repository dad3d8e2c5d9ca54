#pragma once

// Jacobi elliptic kernel: complete/incomplete Legendre integrals, the
// unreduced Jacobi amplitude with sn/cn/dn, and the Jacobi epsilon function.
//
// Conventions used throughout the library:
//   * the modulus k (NOT the parameter m = k^2) is passed everywhere;
//   * incomplete integrals take the unreduced angle v (any real value) and
//     satisfy the quasi-periodicity F(v + n*pi, k) = F(v, k) + 2n K(k);
//   * jacobi_am_sn_cn_dn returns the unreduced amplitude am(p, k), i.e. the
//     inverse of F along the continuous increasing branch.

#include <stdexcept>

namespace se2sr {

// Absolute tolerance targeted by the iteration cutoffs below.
inline constexpr double kEllipticTol = 1e-12;
// Below this modulus the circular (k = 0) closed forms are used.
inline constexpr double kCircularCutoff = 1e-8;
// Above 1 - kHyperbolicCutoff the hyperbolic (k = 1) closed forms are used.
inline constexpr double kHyperbolicCutoff = 1e-10;

struct AmSnCnDn {
  double am;
  double sn;
  double cn;
  double dn;
};

// Complete integral of the first kind K(k).  Throws std::domain_error for
// k < 0 or k >= 1 (K diverges at k = 1).
double complete_K(double k);

// Complete integral of the second kind E(k) for k in [0, 1]; E(1) = 1.
double complete_E(double k);

// Incomplete integral of the first kind F(v, k), unreduced angle v.
// k = 1 is accepted only for |v| < pi/2 (artanh form); otherwise F diverges.
double incomplete_F(double v, double k);

// Incomplete integral of the second kind E(v, k), unreduced angle v,
// defined for k in [0, 1] (at k = 1 it is the arclength of |cos|).
double incomplete_E(double v, double k);

// Unreduced Jacobi amplitude and the triple sn, cn, dn at argument p.
AmSnCnDn jacobi_am_sn_cn_dn(double p, double k);

// Jacobi epsilon eps(p, k) = E(am(p, k), k); requires k in [0, 1).
double jacobi_epsilon(double p, double k);

}  // namespace se2sr
