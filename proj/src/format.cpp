#include "se2sr/format.hpp"

#include <cmath>
#include <cstdio>

namespace se2sr {

namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  if (std::isinf(v)) {
    out += v > 0 ? "inf" : "-inf";
    return;
  }
  if (std::isnan(v)) {
    out += "nan";
    return;
  }
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void append_fields(std::string& out, std::initializer_list<double> vals) {
  bool first = true;
  for (double v : vals) {
    if (!first) out += ',';
    first = false;
    append_double(out, v);
  }
  out += '\n';
}

void append_json_traj(std::string& out, const Trajectory& traj,
                      const std::string& indent) {
  out += "[\n";
  for (size_t i = 0; i < traj.samples.size(); ++i) {
    const TrajectorySample& s = traj.samples[i];
    out += indent + "  [";
    append_double(out, s.s);
    out += ", ";
    append_double(out, s.x);
    out += ", ";
    append_double(out, s.y);
    out += ", ";
    append_double(out, s.theta);
    out += ", ";
    append_double(out, s.u1);
    out += ", ";
    append_double(out, s.u2);
    out += (i + 1 < traj.samples.size()) ? "],\n" : "]\n";
  }
  out += indent + "]";
}

}  // namespace

std::string format_double(double v) {
  std::string s;
  append_double(s, v);
  return s;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "s,x,y,theta,u1,u2\n";
  for (const TrajectorySample& s : traj.samples) {
    append_fields(out, {s.s, s.x, s.y, s.theta, s.u1, s.u2});
  }
  return out;
}

std::string cloud_csv(const std::vector<CloudPoint>& pts) {
  std::string out = "x,y,theta,R1,R2\n";
  for (const CloudPoint& p : pts) {
    append_fields(out, {p.x, p.y, p.theta, p.R1, p.R2});
  }
  return out;
}

std::string cutlocus_csv(const std::vector<CutLocusRow>& rows) {
  std::string out = "theta,R11,R12,component\n";
  for (const CutLocusRow& r : rows) {
    append_double(out, r.theta);
    out += ',';
    append_double(out, r.R11);
    out += ',';
    append_double(out, r.R12);
    out += ',';
    out += r.component;
    out += '\n';
  }
  return out;
}

std::string trajectory_json(const Covector& lam, const Trajectory& traj) {
  std::string out = "{\n  \"lambda\": {\"gamma\": ";
  append_double(out, lam.gamma);
  out += ", \"c\": ";
  append_double(out, lam.c);
  out += "},\n  \"length\": ";
  append_double(out, traj.length);
  out += ",\n  \"columns\": [\"s\", \"x\", \"y\", \"theta\", \"u1\", \"u2\"],\n";
  out += "  \"samples\": ";
  append_json_traj(out, traj, "  ");
  out += "\n}\n";
  return out;
}

std::string synthesis_json(const Pose& q, const SynthesisResult& res,
                           bool with_paths) {
  std::string out = "{\n  \"target\": {\"x\": ";
  append_double(out, q.x);
  out += ", \"y\": ";
  append_double(out, q.y);
  out += ", \"theta\": ";
  append_double(out, q.theta);
  out += "},\n  \"distance\": ";
  append_double(out, res.distance);
  out += ",\n  \"multiplicity\": \"";
  out += res.multiplicity_kind == Multiplicity::MaxwellPair ? "maxwell_pair"
                                                            : "unique";
  out += "\",\n  \"conditioning_warning\": ";
  out += res.conditioning_warning ? "true" : "false";
  out += ",\n  \"solutions\": [";
  for (size_t i = 0; i < res.solutions.size(); ++i) {
    const GeodesicSolution& g = res.solutions[i];
    out += (i == 0) ? "\n" : ",\n";
    out += "    {\n      \"lambda\": {\"gamma\": ";
    append_double(out, g.lambda.gamma);
    out += ", \"c\": ";
    append_double(out, g.lambda.c);
    out += "},\n      \"t\": ";
    append_double(out, g.t);
    out += ",\n      \"endpoint_residual\": ";
    append_double(out, g.endpoint_residual);
    out += ",\n      \"certificate\": ";
    out += g.certificate ? "true" : "false";
    if (with_paths) {
      out += ",\n      \"columns\": [\"s\", \"x\", \"y\", \"theta\", \"u1\", \"u2\"]";
      out += ",\n      \"path\": ";
      append_json_traj(out, g.trajectory, "      ");
    }
    out += "\n    }";
  }
  out += res.solutions.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

}  // namespace se2sr
