#include "se2sr/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace se2sr {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Bulirsch accuracy knob; el1/el2 converge quadratically, CA = 1e-8 yields
// full double precision on the final iterate.
constexpr double kBulirschCA = 1e-8;

void check_modulus(double k) {
  if (!(k >= 0.0) || !(k <= 1.0)) {
    throw std::domain_error("elliptic: modulus k must lie in [0, 1]");
  }
}

// Bulirsch el1: incomplete integral of the first kind in the form
// el1(x, kc) = F(atan(x), k) with kc = sqrt(1 - k^2) the complementary
// modulus (Bulirsch, Numerische Mathematik 7, 1965).
double el1(double x, double kc) {
  if (x == 0.0) return 0.0;
  double y, e, g, m;
  int l;
  y = std::fabs(1.0 / x);
  kc = std::fabs(kc);
  m = 1.0;
  l = 0;
  for (;;) {
    e = m * kc;
    g = m;
    m = kc + m;
    y = -e / y + y;
    if (y == 0.0) y = std::sqrt(e) * 1e-10;
    if (std::fabs(g - kc) > kBulirschCA * g) {
      kc = std::sqrt(e) * 2.0;
      l *= 2;
      if (y < 0.0) l += 1;
    } else {
      break;
    }
  }
  if (y < 0.0) l += 1;
  e = (std::atan(m / y) + kPi * l) / m;
  return (x < 0.0) ? -e : e;
}

// Bulirsch el2: general incomplete integral of the second kind;
// el2(x, kc, 1, kc^2) = E(atan(x), k).
double el2(double x, double kc, double a, double b) {
  if (x == 0.0) return 0.0;
  double c, d, e, f, g, ii, m, p, y, z;
  int l;
  c = x * x;
  d = 1.0 + c;
  p = std::sqrt((1.0 + kc * kc * c) / d);
  d = x / d;
  c = d / (2.0 * p);
  z = a - b;
  ii = a;
  a = (b + a) / 2.0;
  y = std::fabs(1.0 / x);
  f = 0.0;
  l = 0;
  m = 1.0;
  kc = std::fabs(kc);
  for (;;) {
    b = ii * kc + b;
    e = m * kc;
    g = e / p;
    d = f * g + d;
    f = c;
    ii = a;
    p = g + p;
    c = (d / p + c) / 2.0;
    g = m;
    m = kc + m;
    a = (b / m + a) / 2.0;
    y = -e / y + y;
    if (y == 0.0) y = std::sqrt(e) * 1e-10;
    if (std::fabs(g - kc) > kBulirschCA * g) {
      kc = std::sqrt(e) * 2.0;
      l *= 2;
      if (y < 0.0) l += 1;
    } else {
      break;
    }
  }
  if (y < 0.0) l += 1;
  e = (std::atan(m / y) + kPi * l) * a / m;
  if (x < 0.0) e = -e;
  return e + c * z;
}

double clamp1(double x) { return std::clamp(x, -1.0, 1.0); }

// Splits the unreduced angle as v = n*pi + r with r in [-pi/2, pi/2].
void reduce_angle(double v, int& n, double& r) {
  double nn = std::floor(v / kPi + 0.5);
  // Guard against nn drifting by one ulp for v near (n + 1/2) pi.
  r = v - nn * kPi;
  if (r > kPi / 2.0) {
    r -= kPi;
    nn += 1.0;
  } else if (r < -kPi / 2.0) {
    r += kPi;
    nn -= 1.0;
  }
  n = static_cast<int>(nn);
}

}  // namespace

double complete_K(double k) {
  check_modulus(k);
  if (k == 1.0) {
    throw std::domain_error("complete_K: diverges at k = 1");
  }
  if (k < kCircularCutoff) {
    // K = (pi/2)(1 + k^2/4 + ...) — the quadratic term is below 1e-16 here.
    return kPi / 2.0 * (1.0 + 0.25 * k * k);
  }
  double a = 1.0;
  double b = std::sqrt(1.0 - k * k);
  while (std::fabs(a - b) > 0.5 * kEllipticTol * a) {
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (a + b);
}

double complete_E(double k) {
  check_modulus(k);
  if (k == 1.0) return 1.0;
  if (k < kCircularCutoff) {
    return kPi / 2.0 * (1.0 - 0.25 * k * k);
  }
  double a = 1.0;
  double b = std::sqrt(1.0 - k * k);
  double c = k;
  double sum = 0.5 * c * c;
  double pw = 0.5;
  while (std::fabs(c) > 0.5 * kEllipticTol) {
    double an = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    pw *= 2.0;
    sum += pw * c * c;
  }
  return kPi / (2.0 * a) * (1.0 - sum);
}

double incomplete_F(double v, double k) {
  check_modulus(k);
  if (k == 1.0) {
    if (std::fabs(v) >= kPi / 2.0) {
      throw std::domain_error("incomplete_F: diverges at k = 1, |v| >= pi/2");
    }
    return std::atanh(std::sin(v));
  }
  if (k < kCircularCutoff) return v;
  int n;
  double r;
  reduce_angle(v, n, r);
  double base = (n == 0) ? 0.0 : 2.0 * n * complete_K(k);
  if (std::fabs(std::fabs(r) - kPi / 2.0) < 1e-14) {
    return base + std::copysign(complete_K(k), r);
  }
  double kc = std::sqrt((1.0 - k) * (1.0 + k));
  return base + el1(std::tan(r), kc);
}

double incomplete_E(double v, double k) {
  check_modulus(k);
  if (k == 1.0) {
    int n;
    double r;
    reduce_angle(v, n, r);
    return 2.0 * n + std::sin(r);
  }
  if (k < kCircularCutoff) return v;
  int n;
  double r;
  reduce_angle(v, n, r);
  double base = (n == 0) ? 0.0 : 2.0 * n * complete_E(k);
  if (std::fabs(std::fabs(r) - kPi / 2.0) < 1e-14) {
    return base + std::copysign(complete_E(k), r);
  }
  double kc = std::sqrt((1.0 - k) * (1.0 + k));
  return base + el2(std::tan(r), kc, 1.0, kc * kc);
}

AmSnCnDn jacobi_am_sn_cn_dn(double p, double k) {
  check_modulus(k);
  AmSnCnDn out{};
  if (k < kCircularCutoff) {
    out.am = p;
    out.sn = std::sin(p);
    out.cn = std::cos(p);
    out.dn = 1.0;
    return out;
  }
  if (k > 1.0 - kHyperbolicCutoff) {
    out.am = std::atan(std::sinh(p));  // gudermannian
    out.sn = std::tanh(p);
    out.cn = 1.0 / std::cosh(p);
    out.dn = out.cn;
    return out;
  }
  // AGM descent (Abramowitz & Stegun 17.6): ascend the scale a_n, b_n, c_n,
  // seed phi_N = 2^N a_N p, then halve back down.  The seed is linear in p,
  // which is what makes the returned amplitude the unreduced branch.
  constexpr int kMaxIter = 32;
  double a[kMaxIter], c[kMaxIter];
  a[0] = 1.0;
  c[0] = k;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  int nlev = 0;
  for (int i = 1; i < kMaxIter; ++i) {
    a[i] = 0.5 * (a[i - 1] + b);
    c[i] = 0.5 * (a[i - 1] - b);
    b = std::sqrt(a[i - 1] * b);
    nlev = i;
    if (std::fabs(c[i]) < 0.5 * kEllipticTol * a[i]) break;
  }
  double phi = std::ldexp(a[nlev] * p, nlev);
  for (int i = nlev; i >= 1; --i) {
    phi = 0.5 * (phi + std::asin(clamp1(c[i] / a[i] * std::sin(phi))));
  }
  out.am = phi;
  out.sn = std::sin(phi);
  out.cn = std::cos(phi);
  // Stable form: dn^2 = cn^2 + (1 - k^2) sn^2 stays accurate as k -> 1.
  out.dn = std::sqrt(out.cn * out.cn +
                     (1.0 - k) * (1.0 + k) * out.sn * out.sn);
  return out;
}

double jacobi_epsilon(double p, double k) {
  check_modulus(k);
  if (k == 1.0) {
    throw std::domain_error("jacobi_epsilon: requires k < 1");
  }
  if (k < kCircularCutoff) return p;
  return incomplete_E(jacobi_am_sn_cn_dn(p, k).am, k);
}

}  // namespace se2sr
