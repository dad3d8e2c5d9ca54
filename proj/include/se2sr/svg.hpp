#pragma once

// Deterministic SVG renderer for CSV artifacts: fixed viewport, fixed
// styling, no timestamps.  Axis mapping for locus plots: theta horizontal,
// R1 vertical.  Scatter sections plot (R1, R2) of cloud rows, optionally
// filtered to |theta - theta0| <= band.

#include <string>

namespace se2sr {

// section: cut_locus_plane | caustic_section | sphere_section.
// Malformed CSV raises std::runtime_error naming the offending line.
std::string plot_svg(const std::string& section, const std::string& csv_text,
                     double theta0 = 3.14159265358979323846,
                     double band = -1.0);

}  // namespace se2sr
