#pragma once

// CSV and JSON emitters.  All numbers print with %.17g in the classic
// locale so outputs are byte-deterministic and round-trip exactly.

#include <string>
#include <vector>

#include "se2sr/samplers.hpp"

namespace se2sr {

std::string format_double(double v);  // %.17g; "inf"/"-inf"/"nan" spelled out

// header: s,x,y,theta,u1,u2
std::string trajectory_csv(const Trajectory& traj);

// header: x,y,theta,R1,R2
std::string cloud_csv(const std::vector<CloudPoint>& pts);

// header: theta,R11,R12,component
std::string cutlocus_csv(const std::vector<CutLocusRow>& rows);

std::string trajectory_json(const Covector& lam, const Trajectory& traj);

// Full synthesis result; sampled paths are included when with_paths is set.
std::string synthesis_json(const Pose& q, const SynthesisResult& res,
                           bool with_paths);

}  // namespace se2sr
