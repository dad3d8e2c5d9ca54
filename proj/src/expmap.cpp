#include "se2sr/expmap.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

namespace se2sr {

namespace {

using State = std::array<double, 2>;

double clamp1(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

double canonical_theta(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t + 0.0;  // normalizes -0 so formatted output is stable
}

GeodesicEvaluator::GeodesicEvaluator(const Covector& lam) : tag_(stratify(lam)) {
  switch (tag_.stratum) {
    case Stratum::C1:
      ec_ = to_elliptic(lam, tag_);
      ref_ = jacobi_am_sn_cn_dn(ec_.phi, ec_.k).am;
      break;
    case Stratum::C2:
      ec_ = to_elliptic(lam, tag_);
      ref_ = std::asin(clamp1(ec_.k * jacobi_am_sn_cn_dn(ec_.psi, ec_.k).sn));
      break;
    case Stratum::C3:
      ec_ = to_elliptic(lam, tag_);
      ref_ = std::atan(std::sinh(ec_.phi));
      break;
    case Stratum::C4:
    case Stratum::C5:
      ec_ = {0.0, 0.0, 0.0};
      ref_ = 0.0;
      break;
  }
}

void GeodesicEvaluator::vertical(double s, double& u1, double& u2,
                                 double& theta) const {
  u1 = 0.0;
  u2 = 0.0;
  theta = 0.0;
  switch (tag_.stratum) {
    case Stratum::C1: {
      double s1 = (tag_.component == 0) ? 1.0 : -1.0;
      AmSnCnDn w = jacobi_am_sn_cn_dn(ec_.phi + s, ec_.k);
      u1 = s1 * ec_.k * w.sn;
      u2 = -s1 * w.dn;
      theta = -s1 * (w.am - ref_);
      return;
    }
    case Stratum::C2: {
      double sigma2 = (tag_.component == 0) ? 1.0 : -1.0;
      AmSnCnDn w = jacobi_am_sn_cn_dn(ec_.psi + s / ec_.k, ec_.k);
      u1 = sigma2 * w.sn;
      u2 = -w.cn;
      theta = -(std::asin(clamp1(ec_.k * w.sn)) - ref_);
      return;
    }
    case Stratum::C3: {
      double s1 = (tag_.component % 2 == 0) ? 1.0 : -1.0;
      double sigma = (tag_.component < 2) ? 1.0 : -1.0;
      double u = ec_.phi + sigma * s;
      u1 = s1 * std::tanh(u);
      u2 = -s1 / std::cosh(u);
      theta = -s1 * sigma * (std::atan(std::sinh(u)) - ref_);
      return;
    }
    case Stratum::C4: {
      double sgn = (tag_.component == 0) ? -1.0 : 1.0;
      u1 = 0.0;
      u2 = sgn;
      theta = sgn * s;
      return;
    }
    case Stratum::C5: {
      u1 = (tag_.component == 0) ? 1.0 : -1.0;
      u2 = 0.0;
      theta = 0.0;
      return;
    }
  }
}

std::vector<RawEndpoint> exp_multi(const Covector& lam,
                                   const std::vector<double>& times,
                                   double tol) {
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
      throw std::domain_error("exp_multi: times must be non-decreasing >= 0");
    }
  }
  GeodesicEvaluator ev(lam);
  auto rhs = [&ev](const State& q, State& dq, double s) {
    (void)q;
    double u1, u2, th;
    ev.vertical(s, u1, u2, th);
    dq[0] = u1 * std::cos(th);
    dq[1] = u1 * std::sin(th);
  };
  std::vector<RawEndpoint> out(times.size());
  size_t idx = 0;
  while (idx < times.size() && times[idx] == 0.0) {
    out[idx++] = {0.0, 0.0, 0.0};
  }
  if (idx == times.size()) return out;

  namespace ode = boost::numeric::odeint;
  auto stepper =
      ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<State>());
  State q{0.0, 0.0};
  double t_end = times.back();
  stepper.initialize(q, 0.0, std::min(0.1, t_end));
  while (idx < times.size()) {
    double target = times[idx];
    while (stepper.current_time() < target) {
      stepper.do_step(rhs);
    }
    State qi;
    stepper.calc_state(target, qi);
    double u1, u2, th;
    ev.vertical(target, u1, u2, th);
    out[idx] = {qi[0], qi[1], th};
    ++idx;
  }
  return out;
}

RawEndpoint exp_raw(const Covector& lam, double t, double tol) {
  return exp_multi(lam, {t}, tol)[0];
}

Pose exp_map(const Covector& lam, double t, double tol) {
  RawEndpoint e = exp_raw(lam, t, tol);
  return {e.x, e.y, canonical_theta(e.theta_unwrapped)};
}

Trajectory exp_trajectory(const Covector& lam, double t, int n_samples,
                          double tol) {
  if (t < 0.0) throw std::domain_error("exp_trajectory: t must be >= 0");
  if (n_samples < 2) {
    throw std::domain_error("exp_trajectory: need at least 2 samples");
  }
  std::vector<double> times(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    times[i] = t * i / (n_samples - 1);
  }
  times.back() = t;
  std::vector<RawEndpoint> pts = exp_multi(lam, times, tol);
  GeodesicEvaluator ev(lam);
  Trajectory traj;
  traj.length = t;
  traj.samples.resize(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    double u1, u2, th;
    ev.vertical(times[i], u1, u2, th);
    traj.samples[i] = {times[i],          pts[i].x, pts[i].y,
                       canonical_theta(th), u1,       u2};
  }
  return traj;
}

RectifiedPose rectify(const Pose& q) {
  double ch = std::cos(0.5 * q.theta);
  double sh = std::sin(0.5 * q.theta);
  return {q.y * ch - q.x * sh, q.x * ch + q.y * sh, q.theta};
}

Pose unrectify(const RectifiedPose& r) {
  double ch = std::cos(0.5 * r.theta);
  double sh = std::sin(0.5 * r.theta);
  return {r.R2 * ch - r.R1 * sh, r.R1 * ch + r.R2 * sh, r.theta};
}

Pose boundary_closed_form(BoundaryCase bc, double p, double k, double tau) {
  AmSnCnDn w = jacobi_am_sn_cn_dn(p, k);
  double eps = (k < 1.0) ? incomplete_E(w.am, k) : 0.0;
  double kp = std::sqrt((1.0 - k) * (1.0 + k));
  RectifiedPose r{};
  switch (bc) {
    case BoundaryCase::C1_tau0:
      r.theta = 2.0 * std::atan2(w.sn, -w.cn);
      r.R1 = 2.0 * (p - eps) / k;
      r.R2 = 0.0;
      break;
    case BoundaryCase::C1_tauK:
      r.theta = 2.0 * std::atan2(kp * w.sn / w.dn, -w.cn / w.dn);
      r.R1 = 0.0;
      r.R2 = -2.0 * (k * k * w.cn * w.sn + w.dn * (p - eps)) / (k * w.dn);
      break;
    case BoundaryCase::C1_pK: {
      double KK = complete_K(k);
      double EE = complete_E(k);
      AmSnCnDn wt = jacobi_am_sn_cn_dn(tau, k);
      r.theta = kPi;
      r.R1 = 2.0 * (KK - EE) * wt.cn / (k * wt.dn);
      r.R2 = -2.0 * kp * (KK - EE) * wt.sn / (k * wt.dn);
      break;
    }
    case BoundaryCase::C1_pK_tau0: {
      double KK = complete_K(k);
      double EE = complete_E(k);
      r.theta = kPi;
      r.R1 = 2.0 * (KK - EE) / k;
      r.R2 = 0.0;
      break;
    }
    case BoundaryCase::C1_pK_tauK: {
      double KK = complete_K(k);
      double EE = complete_E(k);
      r.theta = kPi;
      r.R1 = 0.0;
      r.R2 = -2.0 * (KK - EE) / k;
      break;
    }
    case BoundaryCase::C2_tau0:
    case BoundaryCase::C2_p11_tau0:
      r.theta = 2.0 * std::atan2(k * w.sn, -w.dn);
      r.R1 = 2.0 * (p - eps);
      r.R2 = 0.0;
      break;
    case BoundaryCase::C2_tauK:
      r.theta = 0.0;
      r.R1 = -2.0 * kp * (p - eps) / w.dn;
      r.R2 = -2.0 * k * (w.cn * (eps - p) - w.dn * w.sn) / w.dn;
      break;
    case BoundaryCase::C2_tauK_p11:
      r.theta = 0.0;
      r.R1 = -2.0 * kp * (p - eps) / w.dn;
      r.R2 = 0.0;
      break;
    case BoundaryCase::C2_p11: {
      AmSnCnDn wt = jacobi_am_sn_cn_dn(tau, k);
      double delta = 1.0 - k * k * w.sn * w.sn * wt.sn * wt.sn;
      double rd = std::sqrt(delta);
      r.theta = 2.0 * std::atan2(k * w.sn * wt.cn / rd, -w.dn / rd);
      r.R1 = 2.0 * (p - eps) * wt.dn / rd;
      r.R2 = 0.0;
      break;
    }
    case BoundaryCase::C3_tau0: {
      double th = std::tanh(p);
      double sech = 1.0 / std::cosh(p);
      r.theta = 2.0 * std::atan2(th, -sech);
      r.R1 = 2.0 * (p - th);
      r.R2 = 0.0;
      break;
    }
  }
  // The branch of theta produced by 2 atan2 is the one the R1/R2 formulas
  // are written in; reduce to [0, 2pi) only after leaving the chart.
  Pose q = unrectify(r);
  q.theta = canonical_theta(q.theta);
  return q;
}

}  // namespace se2sr
