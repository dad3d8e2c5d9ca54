#include "se2sr/cli.hpp"

#include <clocale>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "se2sr/config.hpp"
#include "se2sr/cutlocus.hpp"
#include "se2sr/elliptic.hpp"
#include "se2sr/expmap.hpp"
#include "se2sr/format.hpp"
#include "se2sr/jacobian.hpp"
#include "se2sr/pendulum.hpp"
#include "se2sr/samplers.hpp"
#include "se2sr/svg.hpp"
#include "se2sr/synthesis.hpp"

#ifdef SE2SR_HAVE_OPENMP
#include <omp.h>
#endif

namespace se2sr {

namespace {

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::domain_error("cannot open output file: " + path);
  f << content;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::domain_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string cloud_json(const std::vector<CloudPoint>& pts) {
  std::string out =
      "{\n  \"columns\": [\"x\", \"y\", \"theta\", \"R1\", \"R2\"],\n  \"rows\": [";
  for (size_t i = 0; i < pts.size(); ++i) {
    out += (i == 0) ? "\n" : ",\n";
    out += "    [" + format_double(pts[i].x) + ", " + format_double(pts[i].y) +
           ", " + format_double(pts[i].theta) + ", " +
           format_double(pts[i].R1) + ", " + format_double(pts[i].R2) + "]";
  }
  out += pts.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

// ------------------------------------------------------------------
// selftest: condensed invariant suites over all modules.
// ------------------------------------------------------------------

struct SuiteReport {
  int failures = 0;
  void add(const char* name, bool ok, double worst) {
    std::printf("%-38s %s (worst %.3g)\n", name, ok ? "ok" : "FAIL", worst);
    if (!ok) ++failures;
  }
};

void rk4_pendulum(double gamma0, double c0, double t, double& gamma,
                  double& c) {
  double g = gamma0, cc = c0;
  int n = std::max(1, static_cast<int>(std::ceil(t / 1e-4)));
  double h = t / n;
  for (int i = 0; i < n; ++i) {
    double k1g = cc, k1c = -std::sin(g);
    double k2g = cc + 0.5 * h * k1c, k2c = -std::sin(g + 0.5 * h * k1g);
    double k3g = cc + 0.5 * h * k2c, k3c = -std::sin(g + 0.5 * h * k2g);
    double k4g = cc + h * k3c, k4c = -std::sin(g + h * k3g);
    g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    cc += h / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c);
  }
  gamma = g;
  c = cc;
}

double circ4pi(double a, double b) {
  double d = std::fabs(canonical_gamma(a) - canonical_gamma(b));
  return std::min(d, kFourPi - d);
}

double fd_exp_jacobian(Stratum st, int comp, double k, double phi, double t) {
  auto endpoint = [&](double kk, double ph, double tt) {
    EllipticCoords ec{kk, ph, ph / kk};
    Covector lam = from_elliptic({st, comp}, ec);
    return exp_raw(lam, tt, 1e-12);
  };
  double h = 1e-5;
  double J[3][3];
  double par[3] = {t, phi, k};
  for (int j = 0; j < 3; ++j) {
    double pp[3] = {par[0], par[1], par[2]};
    double pm[3] = {par[0], par[1], par[2]};
    pp[j] += h;
    pm[j] -= h;
    RawEndpoint ep = endpoint(pp[2], pp[1], pp[0]);
    RawEndpoint em = endpoint(pm[2], pm[1], pm[0]);
    J[0][j] = (ep.x - em.x) / (2.0 * h);
    J[1][j] = (ep.y - em.y) / (2.0 * h);
    J[2][j] = (ep.theta_unwrapped - em.theta_unwrapped) / (2.0 * h);
  }
  return J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
         J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
         J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
}

int selftest(const RunConfig& cfg) {
  SuiteReport rep;
  std::mt19937_64 rng(static_cast<unsigned long>(cfg.seed));
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  {  // elliptic kernel identities
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      double k = 0.999 * unif(rng);
      double p = -10.0 + 20.0 * unif(rng);
      AmSnCnDn w = jacobi_am_sn_cn_dn(p, k);
      worst = std::max(worst, std::fabs(w.sn * w.sn + w.cn * w.cn - 1.0));
      worst = std::max(
          worst, std::fabs(w.dn * w.dn - (1.0 - k * k * w.sn * w.sn)));
      double v = -3.0 * kPi + 6.0 * kPi * unif(rng);
      worst = std::max(
          worst, std::fabs(jacobi_am_sn_cn_dn(incomplete_F(v, k), k).am - v));
    }
    rep.add("elliptic identities", worst < 1e-11, worst);
  }
  {  // pendulum closed form vs RK4
    double worst = 0.0;
    for (int i = 0; i < 24; ++i) {
      double g0 = kFourPi * unif(rng);
      double c0 = -3.0 + 6.0 * unif(rng);
      for (double t = 0.5; t <= 10.0; t += 0.5) {
        Covector flowed = pendulum_flow({g0, c0}, t);
        double gr, cr;
        rk4_pendulum(g0, c0, t, gr, cr);
        worst = std::max(worst, circ4pi(flowed.gamma, gr));
        worst = std::max(worst, std::fabs(flowed.c - cr));
      }
    }
    rep.add("pendulum flow vs RK4", worst < 1e-8, worst);
  }
  {  // boundary closed forms vs forward integration
    double worst = 0.0;
    for (double k : {0.3, 0.6, 0.9}) {
      double K = complete_K(k);
      for (double frac : {0.35, 0.8, 1.3}) {
        double p = frac * K;
        auto check = [&](BoundaryCase bc, const StratumTag& tag, double phase,
                         double t) {
          Covector lam = from_elliptic(
              tag, {k, tag.stratum == Stratum::C2 ? k * phase : phase, phase});
          Pose got = exp_map(lam, t, 1e-12);
          Pose want = boundary_closed_form(bc, p, k);
          double d = std::hypot(got.x - want.x, got.y - want.y);
          d = std::max(d, std::fabs(std::remainder(got.theta - want.theta,
                                                   kTwoPi)));
          worst = std::max(worst, d);
        };
        check(BoundaryCase::C1_tau0, {Stratum::C1, 0}, -p, 2.0 * p);
        check(BoundaryCase::C1_tauK, {Stratum::C1, 0}, K - p, 2.0 * p);
        check(BoundaryCase::C2_tau0, {Stratum::C2, 0}, -p, 2.0 * k * p);
        check(BoundaryCase::C2_tauK, {Stratum::C2, 0}, K - p, 2.0 * k * p);
      }
    }
    for (double p : {0.5, 1.5, 3.0}) {  // separatrix
      Covector lam = from_elliptic({Stratum::C3, 0}, {1.0, -p, -p});
      Pose got = exp_map(lam, 2.0 * p, 1e-12);
      Pose want = boundary_closed_form(BoundaryCase::C3_tau0, p, 1.0);
      double d = std::hypot(got.x - want.x, got.y - want.y);
      worst = std::max(worst, d);
    }
    rep.add("boundary calibration", worst < 1e-8, worst);
  }
  {  // closed-form Jacobians vs finite differences
    double worst = 0.0;
    bool signs = true;
    for (int i = 0; i < 20; ++i) {
      double k = 0.2 + 0.6 * unif(rng);
      double K = complete_K(k);
      double phi = -K + 2.0 * K * unif(rng);
      double t = 0.5 + 2.0 * unif(rng);
      JacobianEval cf = J_full(Stratum::C1, phi + 0.5 * t, 0.5 * t, k);
      double fd = fd_exp_jacobian(Stratum::C1, 0, k, phi, t);
      signs = signs && (cf.J > 0) == (fd > 0);
      if (std::fabs(cf.J) > 1e-6) {
        worst = std::max(worst, std::fabs(fd / cf.J - 1.0));
      }
      double psi = -K + 2.0 * K * unif(rng);
      double kp = 0.3 + 0.6 * unif(rng);
      double tt = 0.5 + 2.0 * unif(rng);
      double pp = tt / (2.0 * kp);
      JacobianEval cf2 = J_full(Stratum::C2, psi + pp, pp, kp);
      double fd2 = fd_exp_jacobian(Stratum::C2, 0, kp, kp * psi, tt);
      signs = signs && (cf2.J > 0) == (fd2 > 0);
      if (std::fabs(cf2.J) > 1e-6) {
        worst = std::max(worst, std::fabs(fd2 / cf2.J - 1.0));
      }
    }
    rep.add("jacobian vs finite differences", signs && worst < 1e-3, worst);
  }
  {  // conjugate-time bounds
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 30; ++i) {
      double k = 0.05 + 0.9 * unif(rng);
      double K = complete_K(k);
      double psi = -2.0 * K + 4.0 * K * unif(rng);
      Covector lam = from_elliptic({Stratum::C2, i % 2}, {k, k * psi, psi});
      double t = conj_time(lam);
      double lo = 2.0 * k * p11(k);
      double hi = std::min(4.0 * k * K, 2.0 * k * p1alpha1(k));
      ok = ok && t >= lo - 1e-9 && t <= hi + 1e-9;
      worst = std::max(worst, std::max(lo - t, t - hi));
    }
    rep.add("conjugate-time bounds", ok, worst);
  }
  {  // synthesis round trip
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 8; ++i) {
      double g0 = kFourPi * unif(rng);
      double c0 = -2.5 + 5.0 * unif(rng);
      Covector lam{g0, c0};
      double tc = cut_time(lam).value;
      double t = std::min(std::isfinite(tc) ? 0.9 * tc : 6.0, 6.0) *
                 (0.3 + 0.65 * unif(rng));
      Pose q = exp_map(lam, t, 1e-12);
      SynthesisResult res = solve(q, cfg.solver_tol);
      ok = ok && res.solutions.size() == 1;
      worst = std::max(worst, std::fabs(res.distance - t));
    }
    rep.add("synthesis round trip", ok && worst < 1e-6, worst);
  }
  {  // reflection group and distance invariance
    bool ok = true;
    int table[8][8];
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) table[a][b] = a ^ b;
    for (int a = 1; a < 8; ++a) {
      for (int b = 1; b < 8; ++b) {
        Pose q{0.7, -0.4, 1.1};
        Pose lhs = reflect_pose(reflect_pose(q, b), a);
        Pose rhs = table[a][b] == 0 ? q : reflect_pose(q, table[a][b]);
        double d = std::hypot(lhs.x - rhs.x, lhs.y - rhs.y) +
                   std::fabs(std::remainder(lhs.theta - rhs.theta, kTwoPi));
        ok = ok && d < 1e-12;
      }
    }
    double worst = 0.0;
    for (const Pose& q : {Pose{0.8, 0.3, 0.9}, Pose{-0.5, 0.9, 2.4}}) {
      double d0 = distance(q);
      for (int i = 1; i <= 7; ++i) {
        double di = distance(reflect_pose(q, i));
        worst = std::max(worst, std::fabs(di - d0));
      }
    }
    rep.add("reflection symmetries", ok && worst < 1e-6, worst);
  }
  {  // sphere consistency (spot check)
    std::vector<CloudPoint> pts = sample_sphere(kPi / 2.0, 60, true, 1e-10);
    double worst = 0.0;
    size_t step = std::max<size_t>(1, pts.size() / 10);
    for (size_t i = 0; i < pts.size(); i += step) {
      double d = distance({pts[i].x, pts[i].y, pts[i].theta});
      worst = std::max(worst, std::fabs(d - kPi / 2.0));
    }
    rep.add("sphere distance consistency", worst < 1e-5, worst);
  }
  std::printf("%s\n", rep.failures == 0 ? "selftest passed" : "selftest FAILED");
  return rep.failures == 0 ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
  std::setlocale(LC_NUMERIC, "C");
  RunConfig cfg;
  std::string out_path;
  bool serial = false;

  CLI::App app{"se2sr: globally optimal sub-Riemannian geodesics on SE(2)"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  app.set_config("--config", "", "key=value config file");
  app.add_option("--kernel-tol", cfg.kernel_tol, "elliptic kernel tolerance")
      ->envname("SE2SR_KERNEL_TOL");
  app.add_option("--ode-tol", cfg.ode_tol, "integrator tolerance")
      ->envname("SE2SR_ODE_TOL");
  app.add_option("--solver-tol", cfg.solver_tol, "shooting solver tolerance")
      ->envname("SE2SR_SOLVER_TOL");
  app.add_option("--format", cfg.format, "output format: csv or json");
  app.add_option("--out", out_path, "write output to a file");
  app.add_option("--seed", cfg.seed, "seed for randomized suites");
  app.add_option("--threads", cfg.threads, "worker threads (0 = default)");
  app.add_flag("--degrees", cfg.degrees, "interpret angles as degrees");
  app.add_flag("--serial", serial, "disable parallel sampling");

  double a_gamma = 0.0, a_c = 0.0, a_t = 1.0;
  double a_x = 0.0, a_y = 0.0, a_theta = 0.0, a_radius = 1.0;
  int a_samples = 100;
  bool a_all = false;
  double a_theta0 = kPi, a_band = -1.0;
  std::string a_section, a_input, a_svg;

  CLI::App* c_exp = app.add_subcommand("exp", "forward exponential map");
  c_exp->add_option("--gamma", a_gamma, "initial pendulum angle")->required();
  c_exp->add_option("--c", a_c, "initial pendulum velocity")->required();
  c_exp->add_option("--t", a_t, "final time (arclength)")->required();
  c_exp->add_option("--samples", a_samples, "trajectory sample count");

  CLI::App* c_synth = app.add_subcommand("synth", "optimal synthesis to a pose");
  c_synth->add_option("--x", a_x)->required();
  c_synth->add_option("--y", a_y)->required();
  c_synth->add_option("--theta", a_theta)->required();
  c_synth->add_flag("--all", a_all, "include sampled paths in the output");

  CLI::App* c_dist = app.add_subcommand("dist", "sub-Riemannian distance");
  c_dist->add_option("--x", a_x)->required();
  c_dist->add_option("--y", a_y)->required();
  c_dist->add_option("--theta", a_theta)->required();

  CLI::App* c_cuttime = app.add_subcommand("cuttime", "cut time of a covector");
  c_cuttime->add_option("--gamma", a_gamma)->required();
  c_cuttime->add_option("--c", a_c)->required();

  CLI::App* c_conjtime =
      app.add_subcommand("conjtime", "first conjugate time of a covector");
  c_conjtime->add_option("--gamma", a_gamma)->required();
  c_conjtime->add_option("--c", a_c)->required();

  CLI::App* c_cutlocus =
      app.add_subcommand("cutlocus", "cut locus boundary curves");
  c_cutlocus->add_option("--n", cfg.n, "samples per component");
  c_cutlocus->add_option("--svg", a_svg, "also write an SVG plot to this path");

  CLI::App* c_caustic = app.add_subcommand("caustic", "first conjugate points");
  c_caustic->add_option("--n", cfg.n, "approximate point count");

  CLI::App* c_sphere = app.add_subcommand("sphere", "metric sphere S_R");
  c_sphere->add_option("--radius", a_radius)->required();
  c_sphere->add_option("--n", cfg.n, "approximate point count");

  CLI::App* c_front = app.add_subcommand("front", "wavefront W_R");
  c_front->add_option("--radius", a_radius)->required();
  c_front->add_option("--n", cfg.n, "approximate point count");

  CLI::App* c_plot = app.add_subcommand("plot", "render a CSV artifact as SVG");
  c_plot->add_option("--section", a_section,
                     "cut_locus_plane | caustic_section | sphere_section")
      ->required();
  c_plot->add_option("--input", a_input, "input CSV path")->required();
  c_plot->add_option("--theta0", a_theta0, "section angle for scatter plots");
  c_plot->add_option("--band", a_band, "theta half-width (<=0: all rows)");

  CLI::App* c_selftest =
      app.add_subcommand("selftest", "run the module invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 64;
  }

  try {
    cfg.validate();
#ifdef SE2SR_HAVE_OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
    bool parallel = !serial;
    if (c_exp->parsed()) {
      Covector lam{cfg.angle(a_gamma), a_c};
      if (a_t < 0.0) throw std::domain_error("exp: t must be >= 0");
      Trajectory traj =
          exp_trajectory(lam, a_t, std::max(2, a_samples), cfg.ode_tol);
      write_output(out_path, cfg.format == "json"
                                 ? trajectory_json(lam, traj)
                                 : trajectory_csv(traj));
    } else if (c_synth->parsed()) {
      Pose q{a_x, a_y, cfg.angle(a_theta)};
      SynthesisResult res = solve(q, cfg.solver_tol);
      write_output(out_path, synthesis_json(q, res, a_all));
    } else if (c_dist->parsed()) {
      Pose q{a_x, a_y, cfg.angle(a_theta)};
      write_output(out_path, format_double(distance(q)) + "\n");
    } else if (c_cuttime->parsed()) {
      write_output(out_path,
                   format_double(cut_time({cfg.angle(a_gamma), a_c}).value) +
                       "\n");
    } else if (c_conjtime->parsed()) {
      write_output(out_path,
                   format_double(conj_time({cfg.angle(a_gamma), a_c})) + "\n");
    } else if (c_cutlocus->parsed()) {
      std::vector<CutLocusRow> rows = sample_cutlocus(cfg.n);
      std::string csv = cutlocus_csv(rows);
      write_output(out_path, csv);
      if (!a_svg.empty()) {
        write_output(a_svg, plot_svg("cut_locus_plane", csv));
      }
    } else if (c_caustic->parsed()) {
      std::vector<CloudPoint> pts = sample_caustic(cfg.n, parallel, cfg.ode_tol);
      write_output(out_path,
                   cfg.format == "json" ? cloud_json(pts) : cloud_csv(pts));
    } else if (c_sphere->parsed()) {
      std::vector<CloudPoint> pts =
          sample_sphere(a_radius, cfg.n, parallel, cfg.ode_tol);
      write_output(out_path,
                   cfg.format == "json" ? cloud_json(pts) : cloud_csv(pts));
    } else if (c_front->parsed()) {
      std::vector<CloudPoint> pts =
          sample_wavefront(a_radius, cfg.n, parallel, cfg.ode_tol);
      write_output(out_path,
                   cfg.format == "json" ? cloud_json(pts) : cloud_csv(pts));
    } else if (c_plot->parsed()) {
      std::string svg =
          plot_svg(a_section, read_file(a_input), a_theta0, a_band);
      write_output(out_path, svg);
    } else if (c_selftest->parsed()) {
      return selftest(cfg);
    } else {
      std::cerr << app.help() << std::flush;
      return 64;
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace se2sr
