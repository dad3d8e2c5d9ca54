#pragma once

// Deterministic point-cloud samplers: metric spheres S_R, wavefronts W_R,
// the caustic (first conjugate points), and the cut-locus boundary curves.
// Grids are fixed functions of the arguments, so identical calls produce
// identical point sets; parallel and serial evaluation agree bitwise.

#include <string>
#include <vector>

#include "se2sr/synthesis.hpp"

namespace se2sr {

struct CloudPoint {
  double x;
  double y;
  double theta;
  double R1;
  double R2;
};

struct CutLocusRow {
  double theta;
  double R11;
  double R12;
  std::string component;  // cut_loc_plus | cut_loc_minus | cut_glob
};

// Points of the sphere S_R: Exp(lam, R) over a covector grid restricted to
// cut_time(lam) >= R.  n controls the grid resolution (~n points offered
// before the cut filter).
std::vector<CloudPoint> sample_sphere(double R, int n, bool parallel = true,
                                      double tol = 1e-10);

// Points of the wavefront W_R: the same grid without the cut filter.
std::vector<CloudPoint> sample_wavefront(double R, int n, bool parallel = true,
                                         double tol = 1e-10);

// Points of the caustic: Exp(lam, conj_time(lam)) over a grid in C2.
std::vector<CloudPoint> sample_caustic(int n, bool parallel = true,
                                       double tol = 1e-10);

// Cut-locus boundary curves: n rows per local component sampling theta in
// (0, pi) with the curve values R1^1 and R1^2 (negated for the minus
// component), plus one marker row for the global component {theta = pi}.
std::vector<CutLocusRow> sample_cutlocus(int n);

}  // namespace se2sr
