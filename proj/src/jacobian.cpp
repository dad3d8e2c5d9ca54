#include "se2sr/jacobian.hpp"

#include <cmath>
#include <limits>

namespace se2sr {

namespace {

struct PK {
  double sn, cn, dn, eps;
};

PK eval_pk(double p, double k) {
  AmSnCnDn w = jacobi_am_sn_cn_dn(p, k);
  return {w.sn, w.cn, w.dn, incomplete_E(w.am, k)};
}

// d f1 / d p = -dn (sn (eps - p) + cn dn), from sn' = cn dn, cn' = -sn dn,
// dn' = -k^2 sn cn, eps' = dn^2.
double f1_prime(double p, double k) {
  PK e = eval_pk(p, k);
  return -e.dn * (e.sn * (e.eps - p) + e.cn * e.dn);
}

double bisect(double lo, double hi, double flo, double (*fn)(double, double),
              double k, int iters) {
  for (int i = 0; i < iters; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = fn(mid, k);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double f1(double p, double k) {
  PK e = eval_pk(p, k);
  return e.cn * (e.eps - p) - e.dn * e.sn;
}

double f2(double p, double k) {
  PK e = eval_pk(p, k);
  return k * k * e.cn * e.sn + e.dn * (p - e.eps);
}

double phi_aux(double p, double k) {
  PK e = eval_pk(p, k);
  return e.sn * e.dn - (2.0 * e.eps - p) * e.cn;
}

double alpha1(double p, double k) {
  PK e = eval_pk(p, k);
  return e.cn * e.dn * (p - 2.0 * e.eps) +
         e.sn * (e.dn * e.dn + e.eps * (p - e.eps));
}

double beta1(double p, double k) {
  PK e = eval_pk(p, k);
  return e.cn * e.eps - e.dn * e.sn;
}

double J1(double tau, double p, double k) {
  PK e = eval_pk(p, k);
  double k2 = k * k;
  double kp2 = (1.0 - k) * (1.0 + k);
  double a = p - e.eps;              // > 0 for p > 0
  double b = e.eps - kp2 * p;        // > 0 for p > 0
  double sn2 = e.sn * e.sn;
  double v1 = kp2 * a * b;
  double v2 = a * b +
              k2 * e.cn * e.dn * (2.0 * e.eps + (k2 - 2.0) * p) * e.sn +
              k2 * ((e.eps - p) * b - k2) * sn2 + k2 * k2 * sn2 * sn2;
  AmSnCnDn t = jacobi_am_sn_cn_dn(tau, k);
  return v1 * t.sn * t.sn + v2 * t.cn * t.cn;
}

double J2(double tau, double p, double k) {
  PK e = eval_pk(p, k);
  double kp2 = (1.0 - k) * (1.0 + k);
  double alpha = kp2 * e.sn *
                 (e.cn * e.dn * (p - 2.0 * e.eps) +
                  e.sn * (e.dn * e.dn + e.eps * (p - e.eps)));
  double beta = (e.cn * (e.eps - p) - e.dn * e.sn) * (e.cn * e.eps - e.dn * e.sn);
  AmSnCnDn t = jacobi_am_sn_cn_dn(tau, k);
  return alpha * t.sn * t.sn + beta * t.cn * t.cn;
}

JacobianEval J_full(Stratum stratum, double tau, double p, double k) {
  if (stratum != Stratum::C1 && stratum != Stratum::C2) {
    throw std::domain_error("J_full: defined on C1 and C2 only");
  }
  double snp = jacobi_am_sn_cn_dn(p, k).sn;
  double snt = jacobi_am_sn_cn_dn(tau, k).sn;
  double delta = 1.0 - k * k * snp * snp * snt * snt;
  double kp2 = (1.0 - k) * (1.0 + k);
  JacobianEval out{};
  if (stratum == Stratum::C1) {
    out.J_core = J1(tau, p, k);
    out.prefactor = 4.0 / (k * k * k * kp2 * delta);
  } else {
    out.J_core = J2(tau, p, k);
    out.prefactor = -4.0 * k / (kp2 * delta);
  }
  out.J = out.prefactor * out.J_core;
  return out;
}

double p11(double k) {
  if (!(k >= 0.0) || k >= 1.0) {
    throw std::domain_error("p11: requires k in [0, 1)");
  }
  if (k < kCircularCutoff) return kPi;
  double K = complete_K(k);
  double lo = K;
  double hi = 2.0 * K;
  // f1(K) = -k' < 0, f1(2K) = 2(K - E) > 0: valid bracket.
  double p = bisect(lo, hi, f1(lo, k), &f1, k, 60);
  for (int i = 0; i < 3; ++i) {
    double step = f1(p, k) / f1_prime(p, k);
    double pn = p - step;
    if (pn > lo && pn < hi) p = pn;
  }
  return p;
}

double p1alpha1(double k) {
  if (!(k >= 0.0) || k >= 1.0) {
    throw std::domain_error("p1alpha1: requires k in [0, 1)");
  }
  double K = (k < kCircularCutoff) ? kPi / 2.0 : complete_K(k);
  // alpha1 ~ p^3/3 > 0 near 0; scan (0, 4K] for the first sign change.
  constexpr int kScan = 2048;
  double prev_p = 4.0 * K / kScan;
  double prev_v = alpha1(prev_p, k);
  for (int i = 2; i <= kScan; ++i) {
    double p = 4.0 * K * i / kScan;
    double v = alpha1(p, k);
    if ((v > 0.0) != (prev_v > 0.0) || v == 0.0) {
      return bisect(prev_p, p, prev_v, &alpha1, k, 80);
    }
    prev_p = p;
    prev_v = v;
  }
  throw std::runtime_error("p1alpha1: no sign change in (0, 4K]");
}

double k0() {
  static const double cached = [] {
    double lo = 0.5, hi = 0.99;
    auto g = [](double k) { return 2.0 * complete_E(k) - complete_K(k); };
    double glo = g(lo);
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      double gm = g(mid);
      if (gm == 0.0) return mid;
      if ((gm > 0.0) == (glo > 0.0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
      if (hi - lo < 1e-16) break;
    }
    return 0.5 * (lo + hi);
  }();
  return cached;
}

double conj_time(const Covector& lam) {
  StratumTag tag = stratify(lam);
  if (tag.stratum != Stratum::C2) {
    return std::numeric_limits<double>::infinity();
  }
  EllipticCoords ec = to_elliptic(lam, tag);
  double k = ec.k;
  double K = complete_K(k);
  double pfirst = p11(k);
  double t1 = 2.0 * k * pfirst;
  double tau1 = ec.psi + pfirst;
  if (std::fabs(jacobi_am_sn_cn_dn(tau1, k).sn) < 1e-9) {
    return t1;  // tangential zero of J2 at p = p11 (non-transversal)
  }
  double t2 = std::min(4.0 * k * K, 2.0 * k * p1alpha1(k));
  auto g = [&](double t) { return J2(ec.psi + t / (2.0 * k), t / (2.0 * k), k); };
  // J2 > 0 just right of t1 when sn tau != 0; take the leftmost sign change.
  constexpr int kScan = 64;
  double prev_t = t1;
  double prev_v = g(t1);
  for (int i = 1; i <= kScan; ++i) {
    double t = t1 + (t2 - t1) * i / kScan;
    double v = g(t);
    if ((v > 0.0) != (prev_v > 0.0) || v == 0.0) {
      double lo = prev_t, hi = t, flo = prev_v;
      for (int j = 0; j < 80; ++j) {
        double mid = 0.5 * (lo + hi);
        double fm = g(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev_t = t;
    prev_v = v;
  }
  // Tangential contact at the right end of the bracket (cn tau -> 0 there).
  return t2;
}

}  // namespace se2sr
