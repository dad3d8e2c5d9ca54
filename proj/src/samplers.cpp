#include "se2sr/samplers.hpp"

#include <cmath>

namespace se2sr {

namespace {

CloudPoint cloud_point(const Pose& p) {
  RectifiedPose r = rectify(p);
  return {p.x, p.y, p.theta, r.R1, r.R2};
}

// Fixed covector grid shared by sphere and wavefront sampling.
std::vector<Covector> cylinder_grid(int n) {
  int nc = std::max(5, static_cast<int>(std::lround(std::sqrt(n / 3.0))));
  if (nc % 2 == 0) ++nc;  // odd count puts c = 0 on the grid
  int ng = std::max(8, (n + nc - 1) / nc);
  constexpr double kCMax = 6.0;
  std::vector<Covector> grid;
  grid.reserve(static_cast<size_t>(nc) * ng);
  for (int i = 0; i < ng; ++i) {
    double g = kFourPi * (i + 0.5) / ng;
    for (int j = 0; j < nc; ++j) {
      double u = 2.0 * (j + 0.5) / nc - 1.0;  // in (-1, 1)
      grid.push_back({g, kCMax * u * u * u});  // cubic spacing: dense near 0
    }
  }
  // The two rotation covectors are isolated points of the cylinder; the
  // offset grid never hits them, so add them explicitly.  They carry the
  // sphere through (0, 0, +-pi) when R matches their cut time pi.
  grid.push_back({0.0, 0.0});
  grid.push_back({kTwoPi, 0.0});
  return grid;
}

std::vector<CloudPoint> sample_front_impl(double R, int n, bool parallel,
                                          double tol, bool cut_filter) {
  if (R <= 0.0) throw std::domain_error("sampler: radius must be positive");
  if (n < 1) throw std::domain_error("sampler: n must be >= 1");
  std::vector<Covector> grid = cylinder_grid(n);
  int m = static_cast<int>(grid.size());
  std::vector<CloudPoint> pts(m);
  std::vector<char> keep(m, 0);
  auto eval = [&](int i) {
    if (cut_filter && cut_time(grid[i]).value < R - 1e-12) return;
    pts[i] = cloud_point(exp_map(grid[i], R, tol));
    keep[i] = 1;
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) eval(i);
  } else {
    for (int i = 0; i < m; ++i) eval(i);
  }
  std::vector<CloudPoint> out;
  out.reserve(m);
  for (int i = 0; i < m; ++i) {
    if (keep[i]) out.push_back(pts[i]);
  }
  return out;
}

}  // namespace

std::vector<CloudPoint> sample_sphere(double R, int n, bool parallel,
                                      double tol) {
  return sample_front_impl(R, n, parallel, tol, true);
}

std::vector<CloudPoint> sample_wavefront(double R, int n, bool parallel,
                                         double tol) {
  return sample_front_impl(R, n, parallel, tol, false);
}

std::vector<CloudPoint> sample_caustic(int n, bool parallel, double tol) {
  if (n < 1) throw std::domain_error("sampler: n must be >= 1");
  int nk = std::max(4, static_cast<int>(std::lround(std::sqrt(n / 8.0))));
  int npsi = std::max(4, (n + 2 * nk - 1) / (2 * nk));
  struct Item {
    Covector lam;
    double t;
  };
  std::vector<Covector> grid;
  grid.reserve(2 * static_cast<size_t>(nk) * npsi);
  for (int i = 0; i < nk; ++i) {
    double k = 0.05 + (0.995 - 0.05) * (i + 0.5) / nk;
    double K4 = 4.0 * complete_K(k);
    for (int comp = 0; comp < 2; ++comp) {
      for (int j = 0; j < npsi; ++j) {
        double psi = K4 * (j + 0.5) / npsi;
        grid.push_back(from_elliptic({Stratum::C2, comp}, {k, k * psi, psi}));
      }
    }
  }
  int m = static_cast<int>(grid.size());
  std::vector<CloudPoint> pts(m);
  auto eval = [&](int i) {
    double t = conj_time(grid[i]);
    pts[i] = cloud_point(exp_map(grid[i], t, tol));
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) eval(i);
  } else {
    for (int i = 0; i < m; ++i) eval(i);
  }
  return pts;
}

std::vector<CutLocusRow> sample_cutlocus(int n) {
  if (n < 1) throw std::domain_error("sampler: n must be >= 1");
  std::vector<CutLocusRow> rows;
  rows.reserve(2 * static_cast<size_t>(n) + 1);
  const double lo = 1e-3;
  const double hi = kPi - 1e-3;
  for (int i = 0; i < n; ++i) {
    double th = lo + (hi - lo) * i / std::max(1, n - 1);
    rows.push_back({th, R11_curve(th), R12_curve(th), "cut_loc_plus"});
  }
  for (int i = 0; i < n; ++i) {
    double th = lo + (hi - lo) * i / std::max(1, n - 1);
    rows.push_back({th, -R11_curve(th), -R12_curve(th), "cut_loc_minus"});
  }
  rows.push_back({kPi, 0.0, 0.0, "cut_glob"});
  return rows;
}

}  // namespace se2sr
