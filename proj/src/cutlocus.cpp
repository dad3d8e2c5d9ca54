#include "se2sr/cutlocus.hpp"

#include <cmath>
#include <limits>

namespace se2sr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double h1(double v, double k) {
  return incomplete_E(v, k) - incomplete_F(v, k) -
         std::sqrt(1.0 - k * k * std::sin(v) * std::sin(v)) * std::tan(v);
}

int sign_with_tol(double x, double tol) {
  if (x > tol) return 1;
  if (x < -tol) return -1;
  return 0;
}

double pose_scale(const Pose& q) {
  double th = (q.theta > kPi) ? q.theta - kTwoPi : q.theta;
  return 1.0 + std::sqrt(q.x * q.x + q.y * q.y + th * th);
}

}  // namespace

CutTime cut_time(const Covector& lam) {
  StratumTag tag = stratify(lam);
  switch (tag.stratum) {
    case Stratum::C1: {
      double k = to_elliptic(lam, tag).k;
      return {2.0 * complete_K(k)};
    }
    case Stratum::C2: {
      double k = to_elliptic(lam, tag).k;
      return {2.0 * k * p11(k)};
    }
    case Stratum::C3:
    case Stratum::C5:
      return {kInf};
    case Stratum::C4:
      return {kPi};
  }
  return {kInf};
}

double R12_curve(double theta) {
  if (!(theta >= 0.0) || theta >= kPi) {
    throw std::domain_error("R12_curve: requires theta in [0, pi)");
  }
  double s = std::sin(0.5 * theta);
  return 2.0 * (std::atanh(s) - s);
}

double v11(double k) {
  if (!(k >= 0.0) || !(k <= 1.0)) {
    throw std::domain_error("v11: requires k in [0, 1]");
  }
  if (k == 1.0) return kPi / 2.0;
  // h1 decreases from +inf at pi/2+ to 2(E - K) <= 0 at pi.
  double lo = kPi / 2.0 + 1e-9;
  double hi = kPi;
  double flo = h1(lo, k);
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = h1(mid, k);
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

double k11(double theta) {
  if (!(theta >= 0.0) || !(theta <= kPi)) {
    throw std::domain_error("k11: requires theta in [0, pi]");
  }
  if (theta == 0.0) return 0.0;
  if (theta == kPi) return 1.0;
  auto g = [](double k) { return 2.0 * std::asin(k * std::sin(v11(k))); };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) < theta) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-13) break;
  }
  return 0.5 * (lo + hi);
}

double R11_curve(double theta) {
  if (!(theta >= 0.0) || !(theta <= kPi)) {
    throw std::domain_error("R11_curve: requires theta in [0, pi]");
  }
  if (theta == kPi) return kInf;
  if (theta < 1e-6) {
    // Cube-root asymptotic; avoids the F - E cancellation at tiny modulus.
    return std::cbrt(kPi) * std::pow(theta, 2.0 / 3.0);
  }
  double k = k11(theta);
  double v = v11(k);
  return 2.0 * (incomplete_F(v, k) - incomplete_E(v, k));
}

CutClassification classify_cut(const Pose& q, double tol) {
  double scale = tol * pose_scale(q);
  // Signed branch theta~ in (-pi, pi]; R flips sign with the branch.
  double th = canonical_theta(q.theta);
  double ths = (th > kPi) ? th - kTwoPi : th;
  double dglob = std::min(std::fabs(ths - kPi), std::fabs(ths + kPi));
  if (dglob < scale) {
    return {CutKind::CutGlob, dglob};
  }
  RectifiedPose r = rectify({q.x, q.y, th});
  double R1 = r.R1, R2 = r.R2;
  if (th > kPi) {  // move to the (-pi, pi) branch
    R1 = -R1;
    R2 = -R2;
  }
  double r11 = R11_curve(std::fabs(ths));
  double dloc = std::hypot(R2, std::max(0.0, r11 - std::fabs(R1)));
  CutKind kind = CutKind::NotCut;
  if (std::fabs(R2) < scale) {
    if (std::fabs(R1 - r11) <= scale || std::fabs(R1 + r11) <= scale) {
      kind = CutKind::CutConjPoint;
    } else if (R1 > r11) {
      kind = CutKind::CutLocPlus;
    } else if (R1 < -r11) {
      kind = CutKind::CutLocMinus;
    }
  }
  return {kind, std::min(dglob, dloc)};
}

StateStratum classify_state(const Pose& q, double tol) {
  double scale = tol * pose_scale(q);
  double th = canonical_theta(q.theta);
  bool near0 = std::min(th, kTwoPi - th) < scale;
  bool nearPi = std::fabs(th - kPi) < scale;
  // Near {theta = 0} evaluate R on the theta = 0 branch so the surface is
  // approached consistently from both sides.
  double thr = (near0 && th > kPi) ? th - kTwoPi : th;
  RectifiedPose r = rectify({q.x, q.y, thr});
  int s1 = sign_with_tol(r.R1, scale);
  int s2 = sign_with_tol(r.R2, scale);

  auto make = [&](const std::string& label, int ss) {
    return StateStratum{label, ss, s1, s2};
  };

  if (near0) {
    if (s1 < 0 && s2 == 0) return make("M25'", 0);
    if (s1 > 0 && s2 == 0) return make("M29'", 0);
    if (s1 == 0 && s2 > 0) return make("M45'", 0);
    if (s1 == 0 && s2 < 0) return make("M46'", 0);
    if (s1 < 0 && s2 < 0) return make("M51'", 0);
    if (s1 < 0 && s2 > 0) return make("M53'", 0);
    if (s1 > 0 && s2 < 0) return make("M55'", 0);
    if (s1 > 0 && s2 > 0) return make("M57'", 0);
    return make("P0", 0);  // the start pose itself; excluded by precondition
  }
  if (nearPi) {
    if (s1 > 0 && s2 < 0) return make("M1'", 0);
    if (s1 < 0 && s2 < 0) return make("M2'", 0);
    if (s1 < 0 && s2 > 0) return make("M3'", 0);
    if (s1 > 0 && s2 > 0) return make("M4'", 0);
    if (s1 > 0 && s2 == 0) return make("M17'", 0);
    if (s1 == 0 && s2 < 0) return make("M18'", 0);
    if (s1 < 0 && s2 == 0) return make("M19'", 0);
    if (s1 == 0 && s2 > 0) return make("M20'", 0);
    return make("M33'", 0);
  }
  bool upper = th < kPi;  // sin(theta) > 0
  int ssin = upper ? 1 : -1;
  double thp = upper ? th : kTwoPi - th;
  if (s2 == 0) {
    double r11 = R11_curve(thp);
    double r12 = R12_curve(thp);
    double a1 = std::fabs(r.R1 - r11), a2 = std::fabs(r.R1 + r11);
    double b1 = std::fabs(r.R1 - r12), b2 = std::fabs(r.R1 + r12);
    if (upper) {
      if (s1 == 0) return make("M44'", ssin);
      if (a1 <= scale) return make("M30'", ssin);
      if (a2 <= scale) return make("M28'", ssin);
      if (b1 <= scale) return make("M50'", ssin);
      if (b2 <= scale) return make("M49'", ssin);
      if (r.R1 > r11) return make("M13'", ssin);
      if (r.R1 < -r11) return make("M11'", ssin);
      if (r.R1 > r12) return make("M56'", ssin);
      if (r.R1 < -r12) return make("M54'", ssin);
      return make(r.R1 > 0.0 ? "M41'" : "M39'", ssin);
    }
    if (s1 == 0) return make("M43'", ssin);
    if (a1 <= scale) return make("M26'", ssin);
    if (a2 <= scale) return make("M32'", ssin);
    if (b1 <= scale) return make("M47'", ssin);
    if (b2 <= scale) return make("M48'", ssin);
    if (r.R1 > r11) return make("M9'", ssin);
    if (r.R1 < -r11) return make("M15'", ssin);
    if (r.R1 > r12) return make("M52'", ssin);
    if (r.R1 < -r12) return make("M58'", ssin);
    return make(r.R1 > 0.0 ? "M35'" : "M37'", ssin);
  }
  if (s1 == 0) {
    if (upper) return make(s2 > 0 ? "M42'" : "M40'", ssin);
    return make(s2 > 0 ? "M38'" : "M36'", ssin);
  }
  // Open octants by the (sgn sin theta, sgn R1, sgn R2) triple;
  // index order [sin>0][R1>0][R2>0].
  static const char* kOctant[2][2][2] = {
      {{{"M3"}, {"M4"}}, {{"M2"}, {"M1"}}},
      {{{"M6"}, {"M5"}}, {{"M7"}, {"M8"}}},
  };
  return make(kOctant[upper ? 1 : 0][s1 > 0 ? 1 : 0][s2 > 0 ? 1 : 0], ssin);
}

Pose reflect_pose(const Pose& q, int i) {
  if (i < 1 || i > 7) {
    throw std::domain_error("reflect_pose: index must be in 1..7");
  }
  // Bit triples (flip R1, flip R2, theta -> 2pi - theta) for eps^1..eps^7.
  static const int kFlips[7][3] = {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 1},
                                   {0, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  const int* f = kFlips[i - 1];
  RectifiedPose r = rectify({q.x, q.y, canonical_theta(q.theta)});
  if (f[0]) r.R1 = -r.R1;
  if (f[1]) r.R2 = -r.R2;
  if (f[2]) r.theta = canonical_theta(kTwoPi - r.theta);
  return unrectify(r);
}

}  // namespace se2sr
