#include "se2sr/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace se2sr {

namespace {

double wrap_pi(double a) { return std::remainder(a, kTwoPi); }

double pose_norm(const Pose& q) {
  double ths = (canonical_theta(q.theta) > kPi)
                   ? canonical_theta(q.theta) - kTwoPi
                   : canonical_theta(q.theta);
  return std::sqrt(q.x * q.x + q.y * q.y + ths * ths);
}

struct Residual3 {
  double rx, ry, rth;
  double norm() const { return std::sqrt(rx * rx + ry * ry + rth * rth); }
};

Residual3 shoot_residual(double gamma, double c, double t, const Pose& q,
                         double ode_tol) {
  RawEndpoint e = exp_raw({gamma, c}, t, ode_tol);
  return {e.x - q.x, e.y - q.y, wrap_pi(e.theta_unwrapped - q.theta)};
}

// ------------------------------------------------------------------
// Endpoint table over the covector cylinder: one loose-tolerance forward
// integration per seed, sampled on a fixed time grid.  Built once, then
// read-only; every solve ranks its Newton starts against this table.
// ------------------------------------------------------------------

struct SeedEntry {
  double gamma, c, t;
  double x, y, th;
};

struct SeedTable {
  std::vector<SeedEntry> entries;
  std::vector<double> times;
};

const SeedTable& seed_table() {
  static const SeedTable table = [] {
    SeedTable tb;
    constexpr int kNGamma = 24;
    const double cs[17] = {0.0,  0.25, -0.25, 0.55, -0.55, 0.9,  -0.9,
                           1.3,  -1.3, 1.75,  -1.75, 2.25, -2.25, 3.0,
                           -3.0, 4.5,  -4.5};
    std::vector<Covector> seeds;
    for (int i = 0; i < kNGamma; ++i) {
      double g = kFourPi * (i + 0.5) / kNGamma;
      for (double c : cs) seeds.push_back({g, c});
    }
    constexpr int kNT = 96;
    tb.times.resize(kNT);
    for (int j = 0; j < kNT; ++j) tb.times[j] = 0.25 * (j + 1);
    tb.entries.resize(seeds.size() * kNT);
    int nseeds = static_cast<int>(seeds.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < nseeds; ++i) {
      std::vector<RawEndpoint> pts = exp_multi(seeds[i], tb.times, 1e-8);
      for (int j = 0; j < kNT; ++j) {
        tb.entries[i * kNT + j] = {seeds[i].gamma, seeds[i].c, tb.times[j],
                                   pts[j].x,       pts[j].y,   pts[j].theta_unwrapped};
      }
    }
    return tb;
  }();
  return table;
}

// ------------------------------------------------------------------
// Damped Newton shooting on F(gamma, c, t) = exp((gamma,c), t) - q.
// ------------------------------------------------------------------

struct Shot {
  double gamma, c, t;
  double resid;
  bool ok;
};

Shot newton_shoot(const Pose& q, double g0, double c0, double t0, double scale,
                  double tol, double t_cap) {
  double v[3] = {g0, c0, std::max(t0, 1e-6)};
  auto clampv = [&](double* w) {
    w[1] = std::clamp(w[1], -60.0, 60.0);
    w[2] = std::clamp(w[2], 1e-9, t_cap);
  };
  clampv(v);
  double ode_tol = 1e-9;
  bool refined = false;
  Residual3 r = shoot_residual(v[0], v[1], v[2], q, ode_tol);
  double rn = r.norm();
  double accept = tol * scale;
  double deep = std::max(1e-13 * scale, 1e-14);
  for (int iter = 0; iter < 50; ++iter) {
    if (rn < 1e-7 && !refined) {
      ode_tol = 1e-12;
      refined = true;
      r = shoot_residual(v[0], v[1], v[2], q, ode_tol);
      rn = r.norm();
    }
    if (rn <= deep && refined) break;
    double J[3][3];
    for (int j = 0; j < 3; ++j) {
      double h = 1e-6 * (1.0 + std::fabs(v[j]));
      double w[3] = {v[0], v[1], v[2]};
      w[j] += h;
      Residual3 rp = shoot_residual(w[0], w[1], w[2], q, ode_tol);
      J[0][j] = (rp.rx - r.rx) / h;
      J[1][j] = (rp.ry - r.ry) / h;
      J[2][j] = wrap_pi(rp.rth - r.rth) / h;
    }
    double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                 J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                 J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    if (std::fabs(det) < 1e-14) break;
    double rhs[3] = {r.rx, r.ry, r.rth};
    double step[3];
    // Cramer's rule (3x3).
    double Jx[3][3];
    for (int col = 0; col < 3; ++col) {
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) Jx[a][b] = J[a][b];
      for (int a = 0; a < 3; ++a) Jx[a][col] = rhs[a];
      double d = Jx[0][0] * (Jx[1][1] * Jx[2][2] - Jx[1][2] * Jx[2][1]) -
                 Jx[0][1] * (Jx[1][0] * Jx[2][2] - Jx[1][2] * Jx[2][0]) +
                 Jx[0][2] * (Jx[1][0] * Jx[2][1] - Jx[1][1] * Jx[2][0]);
      step[col] = d / det;
    }
    double lamb = 1.0;
    bool improved = false;
    for (int halv = 0; halv < 12; ++halv) {
      double w[3] = {v[0] - lamb * step[0], v[1] - lamb * step[1],
                     v[2] - lamb * step[2]};
      clampv(w);
      Residual3 rw = shoot_residual(w[0], w[1], w[2], q, ode_tol);
      double rwn = rw.norm();
      if (rwn < rn) {
        v[0] = w[0];
        v[1] = w[1];
        v[2] = w[2];
        r = rw;
        rn = rwn;
        improved = true;
        break;
      }
      lamb *= 0.5;
    }
    if (!improved) {
      if (refined) break;
      ode_tol = 1e-12;
      refined = true;
      r = shoot_residual(v[0], v[1], v[2], q, ode_tol);
      rn = r.norm();
    }
  }
  return {v[0], v[1], v[2], rn, refined && rn <= accept};
}

struct Candidate {
  double gamma, c, t;
  double resid;
};

bool same_geodesic(const Candidate& a, const Candidate& b) {
  double dg = std::fabs(canonical_gamma(a.gamma) - canonical_gamma(b.gamma));
  dg = std::min(dg, kFourPi - dg);
  double m = std::max({dg, std::fabs(a.c - b.c), std::fabs(a.t - b.t)});
  return m < 1e-4;
}

void add_candidate(std::vector<Candidate>& cands, const Candidate& c) {
  for (Candidate& e : cands) {
    if (same_geodesic(e, c)) {
      if (c.resid < e.resid) e = c;
      return;
    }
  }
  cands.push_back(c);
}

GeodesicSolution make_solution(const Covector& lam_in, double t,
                               const Pose& q) {
  GeodesicSolution g;
  g.lambda = {canonical_gamma(lam_in.gamma), lam_in.c};
  g.t = t;
  g.trajectory = exp_trajectory(g.lambda, t, 65, 1e-10);
  g.endpoint_residual =
      shoot_residual(g.lambda.gamma, g.lambda.c, t, q, 1e-12).norm();
  g.certificate = t <= cut_time(g.lambda).value + 1e-9;
  return g;
}

SynthesisResult finalize(std::vector<Candidate> cands, const Pose& q,
                         bool warn) {
  double t_min = cands.front().t;
  for (const Candidate& c : cands) t_min = std::min(t_min, c.t);
  std::vector<Candidate> best;
  for (const Candidate& c : cands) {
    if (c.t <= t_min + 1e-8 * (1.0 + t_min)) best.push_back(c);
  }
  std::sort(best.begin(), best.end(), [](const Candidate& a, const Candidate& b) {
    if (a.t != b.t) return a.t < b.t;
    double ga = canonical_gamma(a.gamma), gb = canonical_gamma(b.gamma);
    if (ga != gb) return ga < gb;
    return a.c < b.c;
  });
  SynthesisResult res;
  for (const Candidate& c : best) {
    res.solutions.push_back(
        make_solution({canonical_gamma(c.gamma), c.c}, c.t, q));
  }
  res.distance = t_min;
  res.multiplicity_kind =
      res.solutions.size() >= 2 ? Multiplicity::MaxwellPair : Multiplicity::Unique;
  res.conditioning_warning = warn;
  return res;
}

// Flips the connected component of a C1/C2 covector while keeping the
// elliptic coordinates; by the reflection relations this conjugates the
// endpoint by eps^4 (C1) or eps^3 (C2).
Covector flip_component(const Covector& lam) {
  StratumTag tag = stratify(lam);
  EllipticCoords ec = to_elliptic(lam, tag);
  tag.component ^= 1;
  return from_elliptic(tag, ec);
}

SynthesisResult solve_generic_impl(const Pose& q_in, double tol, int depth) {
  Pose q{q_in.x, q_in.y, canonical_theta(q_in.theta)};
  double rho = std::hypot(q.x, q.y);
  double scale = 1.0 + pose_norm(q);
  if (pose_norm(q) < 1e-9) {
    return {{}, 0.0, Multiplicity::Unique, false};
  }
  CutClassification cc = classify_cut(q, 1e-9);
  bool pair_expected = cc.kind == CutKind::CutGlob ||
                       cc.kind == CutKind::CutLocPlus ||
                       cc.kind == CutKind::CutLocMinus;
  size_t expected = pair_expected ? 2 : 1;
  bool warn = cc.kind == CutKind::CutConjPoint;
  // Any pose is reachable by rotate + line + rotate, so the optimum is
  // bounded by rho + 2*pi; keep slack for Newton wandering.
  double t_max = std::max(kPi + 4.0 * rho, rho + kTwoPi + 0.5);
  double t_cap = 1.25 * t_max;

  const SeedTable& tb = seed_table();
  struct Scored {
    double score;
    int idx;
  };
  std::vector<Scored> scored;
  scored.reserve(tb.entries.size());
  for (int i = 0; i < static_cast<int>(tb.entries.size()); ++i) {
    const SeedEntry& e = tb.entries[i];
    if (e.t > t_max + 1.0) continue;
    double d = std::hypot(e.x - q.x, e.y - q.y);
    double dth = wrap_pi(e.th - q.theta);
    scored.push_back({std::sqrt(d * d + dth * dth), i});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    return a.score != b.score ? a.score < b.score : a.idx < b.idx;
  });
  // Keep the best starts, at most 3 per seed covector and with distinct
  // table times at least 0.5 apart.
  std::vector<int> starts;
  {
    std::vector<std::pair<int, std::vector<double>>> taken;
    for (const Scored& sc : scored) {
      if (starts.size() >= 144) break;
      int seed_id = sc.idx / static_cast<int>(tb.times.size());
      double t = tb.entries[sc.idx].t;
      auto it = std::find_if(taken.begin(), taken.end(),
                             [&](const auto& p) { return p.first == seed_id; });
      if (it == taken.end()) {
        taken.push_back({seed_id, {t}});
        starts.push_back(sc.idx);
      } else {
        if (it->second.size() >= 3) continue;
        bool close = false;
        for (double tt : it->second) close |= std::fabs(tt - t) < 0.5;
        if (close) continue;
        it->second.push_back(t);
        starts.push_back(sc.idx);
      }
    }
  }

  std::vector<Candidate> cands;
  constexpr int kWave = 12;
  bool extra_wave_done = false;
  for (size_t w0 = 0; w0 < starts.size(); w0 += kWave) {
    int wn = static_cast<int>(std::min<size_t>(kWave, starts.size() - w0));
    std::vector<Shot> shots(wn);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < wn; ++i) {
      const SeedEntry& e = tb.entries[starts[w0 + i]];
      shots[i] = newton_shoot(q, e.gamma, e.c, e.t, scale, tol, t_cap);
    }
    for (const Shot& s : shots) {
      if (!s.ok) continue;
      Covector lam{canonical_gamma(s.gamma), s.c};
      if (s.t > cut_time(lam).value + 1e-9) continue;
      add_candidate(cands, {s.gamma, s.c, s.t, s.resid});
    }
    if (cands.size() >= expected) {
      if (extra_wave_done) break;
      extra_wave_done = true;
    }
  }

  if (cands.size() < expected && depth == 0) {
    // Second Maxwell preimage via the reflection relations: solve for the
    // reflected target and flip the covector component.
    int refl = (cc.kind == CutKind::CutGlob) ? 4 : 3;
    Pose qr = reflect_pose(q, refl);
    SynthesisResult rr = solve_generic_impl(qr, tol, depth + 1);
    for (const GeodesicSolution& g : rr.solutions) {
      StratumTag tg = stratify(g.lambda);
      if (tg.stratum != Stratum::C1 && tg.stratum != Stratum::C2) continue;
      Covector lam2 = flip_component(g.lambda);
      Shot s = newton_shoot(q, lam2.gamma, lam2.c, g.t, scale, tol, t_cap);
      if (!s.ok) continue;
      Covector lam{canonical_gamma(s.gamma), s.c};
      if (s.t > cut_time(lam).value + 1e-9) continue;
      add_candidate(cands, {s.gamma, s.c, s.t, s.resid});
    }
  }

  if (cands.empty()) {
    throw std::runtime_error(
        "solve_generic: no Newton start converged for target (" +
        std::to_string(q.x) + ", " + std::to_string(q.y) + ", " +
        std::to_string(q.theta) + ")");
  }
  return finalize(std::move(cands), q, warn);
}

// Bisection for an increasing scalar map fn(k) = target on (klo, khi).
template <typename Fn>
double bisect_modulus(Fn fn, double target, double klo, double khi) {
  double flo = fn(klo) - target;
  double fhi = fn(khi) - target;
  if (flo > 0.0 || fhi < 0.0) {
    throw std::runtime_error("solve_special: target outside numeric range");
  }
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (klo + khi);
    double fm = fn(mid) - target;
    if (fm == 0.0) return mid;
    if (fm < 0.0) {
      klo = mid;
    } else {
      khi = mid;
    }
    if (khi - klo < 1e-16) break;
  }
  return 0.5 * (klo + khi);
}

// Covector in C1 component `comp` with p = K whose endpoint at t = 2K is
// the theta = pi pose q (tau recovered from the rectified coordinates).
Covector c1_pK_covector(double k, const Pose& q, int comp) {
  RectifiedPose r = rectify({q.x, q.y, kPi});
  double rho = std::hypot(r.R1, r.R2);
  double kp = std::sqrt((1.0 - k) * (1.0 + k));
  double a = -r.R2 / (rho * kp);  // sn(tau)/dn(tau)
  double b = r.R1 / rho;          // cn(tau)/dn(tau)
  double sn2 = a * a / (1.0 + k * k * a * a);
  double sn = std::copysign(std::sqrt(sn2), a);
  double dn = std::sqrt(1.0 - k * k * sn2);
  double cn = b * dn;
  double tau = incomplete_F(std::atan2(sn, cn), k);
  double phi = tau - complete_K(k);
  return from_elliptic({Stratum::C1, comp}, {k, phi, phi});
}

}  // namespace

std::optional<SynthesisResult> solve_special(const Pose& q_in) {
  Pose q{q_in.x, q_in.y, canonical_theta(q_in.theta)};
  double ths = (q.theta > kPi) ? q.theta - kTwoPi : q.theta;
  double rho = std::hypot(q.x, q.y);
  const double ztol = 1e-11;
  if (pose_norm(q) < 1e-9) {
    return SynthesisResult{{}, 0.0, Multiplicity::Unique, false};
  }
  bool th0 = std::fabs(ths) < ztol;
  bool thpi = std::fabs(std::fabs(ths) - kPi) < ztol;

  SynthesisResult res;
  if (th0 && std::fabs(q.y) < ztol && std::fabs(q.x) >= ztol) {
    // Straight line along the x-axis.
    Covector lam{q.x > 0.0 ? kPi : 3.0 * kPi, 0.0};
    res.solutions.push_back(make_solution(lam, std::fabs(q.x), q));
    res.distance = std::fabs(q.x);
    res.multiplicity_kind = Multiplicity::Unique;
    return res;
  }
  if (rho < ztol && !thpi) {
    // In-place rotation.
    Covector lam{ths > 0.0 ? kTwoPi : 0.0, 0.0};
    res.solutions.push_back(make_solution(lam, std::fabs(ths), q));
    res.distance = std::fabs(ths);
    res.multiplicity_kind = Multiplicity::Unique;
    return res;
  }
  if (rho < ztol && thpi) {
    // Two opposite rotations of length pi.
    res.solutions.push_back(make_solution({0.0, 0.0}, kPi, q));
    res.solutions.push_back(make_solution({kTwoPi, 0.0}, kPi, q));
    res.distance = kPi;
    res.multiplicity_kind = Multiplicity::MaxwellPair;
    return res;
  }
  if (thpi) {
    // Two oscillating-pendulum solutions meeting at t = 2K(k), with k from
    // (2/k)(K - E) = |R|.
    double k = bisect_modulus(
        [](double kk) {
          return 2.0 * (complete_K(kk) - complete_E(kk)) / kk;
        },
        rho, 1e-6, 1.0 - 1e-12);
    double t = 2.0 * complete_K(k);
    Covector lamA = c1_pK_covector(k, q, 0);
    Pose qr = reflect_pose(q, 4);
    Covector lamB = flip_component(c1_pK_covector(k, qr, 0));
    res.solutions.push_back(make_solution(lamA, t, q));
    res.solutions.push_back(make_solution(lamB, t, q));
    std::sort(res.solutions.begin(), res.solutions.end(),
              [](const GeodesicSolution& a, const GeodesicSolution& b) {
                return a.lambda.gamma < b.lambda.gamma;
              });
    res.distance = t;
    res.multiplicity_kind = Multiplicity::MaxwellPair;
    return res;
  }
  if (th0 && std::fabs(q.y) >= ztol && std::fabs(q.x) < ztol) {
    // Two rotating-pendulum solutions at the cut time 2k p11(k); the
    // modulus solves 2(p11 - E(p11)) k' / dn(p11) = |y|.
    double k = bisect_modulus(
        [](double kk) {
          double p = p11(kk);
          AmSnCnDn w = jacobi_am_sn_cn_dn(p, kk);
          double eps = incomplete_E(w.am, kk);
          return 2.0 * (p - eps) * std::sqrt((1.0 - kk) * (1.0 + kk)) / w.dn;
        },
        std::fabs(q.y), 1e-6, 1.0 - 1e-11);
    double p = p11(k);
    double t = 2.0 * k * p;
    double K = complete_K(k);
    int comp = q.y < 0.0 ? 0 : 1;  // sign of c is -sgn(y)
    for (double psi : {K - p, -K - p}) {
      Covector lam = from_elliptic({Stratum::C2, comp}, {k, k * psi, psi});
      res.solutions.push_back(make_solution(lam, t, q));
    }
    std::sort(res.solutions.begin(), res.solutions.end(),
              [](const GeodesicSolution& a, const GeodesicSolution& b) {
                return a.lambda.gamma < b.lambda.gamma;
              });
    res.distance = t;
    res.multiplicity_kind = Multiplicity::MaxwellPair;
    return res;
  }
  if (th0 && std::fabs(q.y) >= ztol) {
    // Unique rotating-pendulum solution: 2x2 system in (k, p):
    //   s sgn(y) 2k f1(p,k)/dn(p,k) = x,  2(p - E(p)) k'/dn(p,k) = |y|,
    // with s = -sgn(x y) and tau = psi + p = s K.
    double s = (q.x * q.y > 0.0) ? -1.0 : 1.0;
    double sy = q.y > 0.0 ? 1.0 : -1.0;
    auto F = [&](double k, double p, double& r1, double& r2) {
      AmSnCnDn w = jacobi_am_sn_cn_dn(p, k);
      double eps = incomplete_E(w.am, k);
      double kp = std::sqrt((1.0 - k) * (1.0 + k));
      double f1v = w.cn * (eps - p) - w.dn * w.sn;
      r1 = s * sy * 2.0 * k * f1v / w.dn - q.x;
      r2 = 2.0 * (p - eps) * kp / w.dn - std::fabs(q.y);
    };
    // Coarse grid seed.
    double bk = 0.5, bp = 1.0, bn = 1e300;
    for (int i = 1; i <= 24; ++i) {
      double k = i / 25.0;
      double pmax = p11(k);
      for (int j = 1; j <= 16; ++j) {
        double p = pmax * j / 16.0;
        double r1, r2;
        F(k, p, r1, r2);
        double n = std::hypot(r1, r2);
        if (n < bn) {
          bn = n;
          bk = k;
          bp = p;
        }
      }
    }
    double k = bk, p = bp;
    double r1, r2;
    F(k, p, r1, r2);
    double rn = std::hypot(r1, r2);
    for (int iter = 0; iter < 80 && rn > 1e-13; ++iter) {
      double hk = 1e-7 * (1.0 + k), hp = 1e-7 * (1.0 + p);
      double a1, a2, b1, b2;
      F(std::min(k + hk, 1.0 - 1e-12), p, a1, a2);
      F(k, p + hp, b1, b2);
      double j11 = (a1 - r1) / hk, j12 = (b1 - r1) / hp;
      double j21 = (a2 - r2) / hk, j22 = (b2 - r2) / hp;
      double det = j11 * j22 - j12 * j21;
      if (std::fabs(det) < 1e-18) break;
      double dk = (r1 * j22 - r2 * j12) / det;
      double dp = (j11 * r2 - j21 * r1) / det;
      double lamb = 1.0;
      bool improved = false;
      for (int h = 0; h < 20; ++h) {
        double kn = std::clamp(k - lamb * dk, 1e-6, 1.0 - 1e-10);
        double pn = std::clamp(p - lamb * dp, 1e-6, p11(kn));
        double w1, w2;
        F(kn, pn, w1, w2);
        double n = std::hypot(w1, w2);
        if (n < rn) {
          k = kn;
          p = pn;
          r1 = w1;
          r2 = w2;
          rn = n;
          improved = true;
          break;
        }
        lamb *= 0.5;
      }
      if (!improved) break;
    }
    if (rn > 1e-8 * (1.0 + pose_norm(q))) {
      return std::nullopt;  // let the generic solver handle it
    }
    double t = 2.0 * k * p;
    double psi = s * complete_K(k) - p;
    int comp = q.y < 0.0 ? 0 : 1;
    Covector lam = from_elliptic({Stratum::C2, comp}, {k, k * psi, psi});
    res.solutions.push_back(make_solution(lam, t, q));
    res.distance = t;
    res.multiplicity_kind = Multiplicity::Unique;
    return res;
  }
  return std::nullopt;
}

SynthesisResult solve_generic(const Pose& q, double tol) {
  return solve_generic_impl(q, tol, 0);
}

SynthesisResult solve(const Pose& q, double tol) {
  if (auto special = solve_special(q)) {
    double scale = 1.0 + pose_norm(q);
    bool ok = true;
    for (const GeodesicSolution& g : special->solutions) {
      ok = ok && g.endpoint_residual <= 1e-7 * scale && g.certificate;
    }
    if (ok) return std::move(*special);
  }
  return solve_generic(q, tol);
}

double distance(const Pose& q) { return solve(q).distance; }

}  // namespace se2sr
