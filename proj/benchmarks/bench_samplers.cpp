// Timing harness for the cloud samplers: the OpenMP-parallel path against
// the serial reference implementation, plus an exact equality check between
// the two (each grid point is computed independently, so the outputs must
// match bit for bit regardless of scheduling).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#ifdef SE2SR_HAVE_OPENMP
#include <omp.h>
#endif

#include "se2sr/samplers.hpp"

using namespace se2sr;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

bool identical(const std::vector<CloudPoint>& a,
               const std::vector<CloudPoint>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].x != b[i].x || a[i].y != b[i].y || a[i].theta != b[i].theta ||
        a[i].R1 != b[i].R1 || a[i].R2 != b[i].R2)
      return false;
  }
  return true;
}

void row(const char* name, size_t n_pts, double serial, double parallel,
         bool same) {
  std::printf("  %-26s %6zu pts   serial %8.3f s   parallel %8.3f s   "
              "speedup %.2fx   identical: %s\n",
              name, n_pts, serial, parallel, serial / parallel,
              same ? "yes" : "NO");
}

}  // namespace

int main() {
#ifdef SE2SR_HAVE_OPENMP
  std::printf("samplers benchmark (OpenMP, %d threads available)\n",
              omp_get_max_threads());
#else
  std::printf("samplers benchmark (built without OpenMP; both columns run "
              "the serial path)\n");
#endif
  const int reps = 3;
  int status = 0;

  {
    std::vector<CloudPoint> s, p;
    double ts = best_of(reps, [&] { s = sample_wavefront(3.0, 4000, false); });
    double tp = best_of(reps, [&] { p = sample_wavefront(3.0, 4000, true); });
    bool same = identical(s, p);
    row("wavefront R=3 n=4000", s.size(), ts, tp, same);
    if (!same) status = 1;
  }
  {
    std::vector<CloudPoint> s, p;
    double ts = best_of(reps, [&] { s = sample_sphere(kPi, 4000, false); });
    double tp = best_of(reps, [&] { p = sample_sphere(kPi, 4000, true); });
    bool same = identical(s, p);
    row("sphere R=pi n=4000", s.size(), ts, tp, same);
    if (!same) status = 1;
  }
  {
    std::vector<CloudPoint> s, p;
    double ts = best_of(reps, [&] { s = sample_caustic(2000, false); });
    double tp = best_of(reps, [&] { p = sample_caustic(2000, true); });
    bool same = identical(s, p);
    row("caustic n=2000", s.size(), ts, tp, same);
    if (!same) status = 1;
  }
  return status;
}
