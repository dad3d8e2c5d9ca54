#include "se2sr/pendulum.hpp"

#include <cmath>

namespace se2sr {

namespace {

// Sign of cos(gamma/2) picks the C1/C3 branch; returns +1 or -1.
int branch_sign(double gamma) {
  return std::cos(0.5 * gamma) >= 0.0 ? +1 : -1;
}

}  // namespace

double canonical_gamma(double gamma) {
  double g = std::fmod(gamma, kFourPi);
  if (g < 0.0) g += kFourPi;
  if (g >= kFourPi) g = 0.0;  // fmod rounding at the seam
  return g;
}

double energy(const Covector& lam) {
  return 0.5 * lam.c * lam.c - std::cos(lam.gamma);
}

StratumTag stratify(const Covector& lam) {
  double g = canonical_gamma(lam.gamma);
  double ee = energy(lam);
  if (std::fabs(ee - 1.0) <= kStratifyTol) {
    // Separatrix level; the unstable equilibria are the points with c = 0.
    double dpi = std::fabs(g - kPi);
    double d3pi = std::fabs(g - 3.0 * kPi);
    if (std::fabs(lam.c) <= kStratifyTol &&
        std::min(dpi, d3pi) <= kStratifyTol) {
      return {Stratum::C5, dpi < d3pi ? 0 : 1};
    }
    int i = branch_sign(g) > 0 ? 0 : 1;
    return {Stratum::C3, i + 2 * (lam.c < 0.0 ? 1 : 0)};
  }
  if (ee < 1.0) {
    if (std::fabs(ee + 1.0) <= kStratifyTol) {
      return {Stratum::C4, (g > kPi && g < 3.0 * kPi) ? 1 : 0};
    }
    return {Stratum::C1, branch_sign(g) > 0 ? 0 : 1};
  }
  return {Stratum::C2, lam.c > 0.0 ? 0 : 1};
}

std::string to_string(const StratumTag& tag) {
  switch (tag.stratum) {
    case Stratum::C1:
      return "C1#" + std::to_string(tag.component);
    case Stratum::C2:
      return tag.component == 0 ? "C2+" : "C2-";
    case Stratum::C3:
      return "C3#" + std::to_string(tag.component);
    case Stratum::C4:
      return "C4#" + std::to_string(tag.component);
    case Stratum::C5:
      return "C5#" + std::to_string(tag.component);
  }
  return "?";
}

EllipticCoords to_elliptic(const Covector& lam) {
  return to_elliptic(lam, stratify(lam));
}

EllipticCoords to_elliptic(const Covector& lam, const StratumTag& tag) {
  double g = canonical_gamma(lam.gamma);
  double sg = std::sin(0.5 * g);
  EllipticCoords ec{};
  switch (tag.stratum) {
    case Stratum::C1: {
      // k^2 = (EE + 1)/2 written in the cancellation-free form.
      double k = std::sqrt(0.25 * lam.c * lam.c + sg * sg);
      double s1 = (tag.component == 0) ? 1.0 : -1.0;
      // sn(phi) = sin(gamma/2)/(s1 k), cn(phi) = c/(2k); phi in (-2K, 2K].
      double v = std::atan2(sg / (s1 * k), lam.c / (2.0 * k));
      ec.k = k;
      ec.phi = incomplete_F(v, k);
      ec.psi = ec.phi;
      return ec;
    }
    case Stratum::C2: {
      double ee = energy(lam);
      double k = std::sqrt(2.0 / (ee + 1.0));
      // c > 0: sn(psi) = sin(gamma/2); c < 0: sn(psi) = sin(-gamma/2).
      double half = (tag.component == 0) ? 0.5 * g : -0.5 * g;
      ec.k = k;
      ec.psi = incomplete_F(half, k);
      ec.phi = k * ec.psi;
      return ec;
    }
    case Stratum::C3: {
      double s1 = (tag.component % 2 == 0) ? 1.0 : -1.0;
      ec.k = 1.0;
      ec.phi = std::atanh(std::clamp(s1 * sg, -1.0, 1.0));
      ec.psi = ec.phi;
      return ec;
    }
    case Stratum::C4:
    case Stratum::C5:
      throw std::domain_error(
          "to_elliptic: equilibria carry no elliptic phase");
  }
  return ec;
}

Covector from_elliptic(const StratumTag& tag, const EllipticCoords& ec) {
  switch (tag.stratum) {
    case Stratum::C1: {
      double s1 = (tag.component == 0) ? 1.0 : -1.0;
      AmSnCnDn w = jacobi_am_sn_cn_dn(ec.phi, ec.k);
      double gamma = 2.0 * std::atan2(s1 * ec.k * w.sn, s1 * w.dn);
      return {canonical_gamma(gamma), 2.0 * ec.k * w.cn};
    }
    case Stratum::C2: {
      AmSnCnDn w = jacobi_am_sn_cn_dn(ec.psi, ec.k);
      double sign = (tag.component == 0) ? 1.0 : -1.0;
      // gamma/2 = am(psi) on C2+, -am(psi) on C2-.
      return {canonical_gamma(sign * 2.0 * w.am), sign * 2.0 / ec.k * w.dn};
    }
    case Stratum::C3: {
      double s1 = (tag.component % 2 == 0) ? 1.0 : -1.0;
      double sigma = (tag.component < 2) ? 1.0 : -1.0;
      double th = std::tanh(ec.phi);
      double sech = 1.0 / std::cosh(ec.phi);
      double gamma = 2.0 * std::atan2(s1 * th, s1 * sech);
      return {canonical_gamma(gamma), 2.0 * sigma * sech};
    }
    case Stratum::C4:
      return {tag.component == 0 ? 0.0 : kTwoPi, 0.0};
    case Stratum::C5:
      return {tag.component == 0 ? kPi : 3.0 * kPi, 0.0};
  }
  return {0.0, 0.0};
}

Covector pendulum_flow(const Covector& lam, double t) {
  StratumTag tag = stratify(lam);
  switch (tag.stratum) {
    case Stratum::C1: {
      EllipticCoords ec = to_elliptic(lam, tag);
      double s1 = (tag.component == 0) ? 1.0 : -1.0;
      AmSnCnDn w = jacobi_am_sn_cn_dn(ec.phi + t, ec.k);
      double gamma = 2.0 * std::atan2(s1 * ec.k * w.sn, s1 * w.dn);
      return {canonical_gamma(gamma), 2.0 * ec.k * w.cn};
    }
    case Stratum::C2: {
      EllipticCoords ec = to_elliptic(lam, tag);
      AmSnCnDn w = jacobi_am_sn_cn_dn(ec.psi + t / ec.k, ec.k);
      double sign = (tag.component == 0) ? 1.0 : -1.0;
      return {canonical_gamma(sign * 2.0 * w.am), sign * 2.0 / ec.k * w.dn};
    }
    case Stratum::C3: {
      EllipticCoords ec = to_elliptic(lam, tag);
      double s1 = (tag.component % 2 == 0) ? 1.0 : -1.0;
      double sigma = (tag.component < 2) ? 1.0 : -1.0;
      double u = ec.phi + sigma * t;
      double th = std::tanh(u);
      double sech = 1.0 / std::cosh(u);
      double gamma = 2.0 * std::atan2(s1 * th, s1 * sech);
      return {canonical_gamma(gamma), 2.0 * sigma * sech};
    }
    case Stratum::C4:
    case Stratum::C5:
      return {canonical_gamma(lam.gamma), 0.0};
  }
  return lam;
}

MidpointParams midpoint_params(const Covector& lam, double t) {
  StratumTag tag = stratify(lam);
  if (tag.stratum == Stratum::C4 || tag.stratum == Stratum::C5) {
    throw std::domain_error("midpoint_params: undefined on equilibria");
  }
  return midpoint_params(tag, to_elliptic(lam, tag), t);
}

MidpointParams midpoint_params(const StratumTag& tag, const EllipticCoords& ec,
                               double t) {
  if (tag.stratum == Stratum::C2) {
    double p = t / (2.0 * ec.k);
    return {ec.psi + p, p};
  }
  double p = 0.5 * t;
  return {ec.phi + p, p};
}

}  // namespace se2sr
