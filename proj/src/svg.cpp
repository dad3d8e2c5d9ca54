#include "se2sr/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace se2sr {

namespace {

constexpr double kPiLocal = 3.14159265358979323846;
constexpr double kW = 840.0, kH = 600.0, kMargin = 60.0;

struct Row {
  std::vector<double> nums;
  std::string tail;  // last field when non-numeric (component label)
};

struct Csv {
  std::vector<std::string> header;
  std::vector<Row> rows;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Csv parse_csv(const std::string& text, size_t numeric_cols) {
  Csv csv;
  size_t pos = 0, lineno = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (line.empty() || line == "\r") {
      if (pos > text.size()) break;
      continue;
    }
    std::vector<std::string> fields = split_csv_line(line);
    if (lineno == 1) {
      csv.header = fields;
      continue;
    }
    Row row;
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i < numeric_cols) {
        char* endp = nullptr;
        const char* s = fields[i].c_str();
        double v = std::strtod(s, &endp);
        if (endp == s || *endp != '\0') {
          throw std::runtime_error("plot: parse error at line " +
                                   std::to_string(lineno) +
                                   ": bad number '" + fields[i] + "'");
        }
        row.nums.push_back(v);
      } else {
        row.tail = fields[i];
      }
    }
    if (row.nums.size() < numeric_cols) {
      throw std::runtime_error("plot: parse error at line " +
                               std::to_string(lineno) + ": expected " +
                               std::to_string(numeric_cols) +
                               " numeric columns");
    }
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

void append_num(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  out += buf;
}

struct Frame {
  double x0, x1, y0, y1;  // data ranges
  double px(double x) const {
    return kMargin + (x - x0) / (x1 - x0) * (kW - 2.0 * kMargin);
  }
  double py(double y) const {
    return kH - kMargin - (y - y0) / (y1 - y0) * (kH - 2.0 * kMargin);
  }
};

void svg_open(std::string& out) {
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 840 600\" "
         "width=\"840\" height=\"600\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"840\" height=\"600\" fill=\"#ffffff\"/>\n";
}

void svg_axes(std::string& out, const Frame& f, const std::string& xlabel,
              const std::string& ylabel) {
  out += "<g stroke=\"#000000\" stroke-width=\"1\" fill=\"none\">\n";
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.6g\" y=\"%.6g\" width=\"%.6g\" height=\"%.6g\"/>\n",
                kMargin, kMargin, kW - 2.0 * kMargin, kH - 2.0 * kMargin);
  out += buf;
  out += "</g>\n";
  out += "<text x=\"" ;
  append_num(out, kW / 2.0);
  out += "\" y=\"";
  append_num(out, kH - kMargin / 3.0);
  out += "\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">";
  out += xlabel;
  out += "</text>\n<text x=\"";
  append_num(out, kMargin / 3.0);
  out += "\" y=\"";
  append_num(out, kH / 2.0);
  out += "\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 ";
  append_num(out, kMargin / 3.0);
  out += " ";
  append_num(out, kH / 2.0);
  out += ")\">";
  out += ylabel;
  out += "</text>\n";
  (void)f;
}

void polyline(std::string& out, const Frame& f,
              const std::vector<std::pair<double, double>>& pts,
              const char* color, const char* extra = "") {
  if (pts.size() < 2) return;
  out += "<polyline fill=\"none\" stroke=\"";
  out += color;
  out += "\" stroke-width=\"1.5\" ";
  out += extra;
  out += "points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    append_num(out, f.px(pts[i].first));
    out += ',';
    append_num(out, f.py(pts[i].second));
  }
  out += "\"/>\n";
}

std::string scatter_svg(const Csv& csv, double theta0, double band) {
  // cloud schema: x,y,theta,R1,R2
  std::vector<std::pair<double, double>> pts;
  for (const Row& r : csv.rows) {
    double th = r.nums[2];
    if (band > 0.0) {
      double d = std::remainder(th - theta0, 2.0 * kPiLocal);
      if (std::fabs(d) > band) continue;
    }
    pts.push_back({r.nums[3], r.nums[4]});
  }
  double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
  if (!pts.empty()) {
    x0 = x1 = pts[0].first;
    y0 = y1 = pts[0].second;
    for (auto& p : pts) {
      x0 = std::min(x0, p.first);
      x1 = std::max(x1, p.first);
      y0 = std::min(y0, p.second);
      y1 = std::max(y1, p.second);
    }
    double padx = 0.05 * std::max(1e-9, x1 - x0);
    double pady = 0.05 * std::max(1e-9, y1 - y0);
    x0 -= padx;
    x1 += padx;
    y0 -= pady;
    y1 += pady;
  }
  Frame f{x0, x1, y0, y1};
  std::string out;
  svg_open(out);
  svg_axes(out, f, "R1", "R2");
  for (auto& p : pts) {
    out += "<circle cx=\"";
    append_num(out, f.px(p.first));
    out += "\" cy=\"";
    append_num(out, f.py(p.second));
    out += "\" r=\"2\" fill=\"#1f77b4\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string cutlocus_svg(const Csv& csv) {
  // schema: theta,R11,R12,component
  std::vector<std::pair<double, double>> up11, up12, lo11, lo12;
  for (const Row& r : csv.rows) {
    if (r.tail == "cut_loc_plus") {
      up11.push_back({r.nums[0], r.nums[1]});
      up12.push_back({r.nums[0], r.nums[2]});
    } else if (r.tail == "cut_loc_minus") {
      lo11.push_back({r.nums[0], r.nums[1]});
      lo12.push_back({r.nums[0], r.nums[2]});
    }
  }
  auto bytheta = [](const std::pair<double, double>& a,
                    const std::pair<double, double>& b) {
    return a.first < b.first;
  };
  std::stable_sort(up11.begin(), up11.end(), bytheta);
  std::stable_sort(up12.begin(), up12.end(), bytheta);
  std::stable_sort(lo11.begin(), lo11.end(), bytheta);
  std::stable_sort(lo12.begin(), lo12.end(), bytheta);
  double rmax = 4.0;
  for (auto& p : up11) {
    if (std::isfinite(p.second)) rmax = std::max(rmax, std::fabs(p.second));
  }
  rmax *= 1.05;
  Frame f{-kPiLocal - 0.3, kPiLocal + 0.3, -rmax, rmax};
  std::string out;
  svg_open(out);
  svg_axes(out, f, "theta", "R1");

  // Mirror theta -> -theta: the curves depend on |theta|.
  auto mirrored = [](const std::vector<std::pair<double, double>>& half) {
    std::vector<std::pair<double, double>> full;
    for (auto it = half.rbegin(); it != half.rend(); ++it) {
      full.push_back({-it->first, it->second});
    }
    full.insert(full.end(), half.begin(), half.end());
    return full;
  };
  std::vector<std::pair<double, double>> u11 = mirrored(up11);
  std::vector<std::pair<double, double>> u12 = mirrored(up12);
  std::vector<std::pair<double, double>> l11 = mirrored(lo11);
  std::vector<std::pair<double, double>> l12 = mirrored(lo12);

  // Shade the two local cut regions {R1 > R11(|theta|)} and its mirror.
  auto shade = [&](const std::vector<std::pair<double, double>>& curve,
                   double ycap) {
    if (curve.size() < 2) return;
    std::string poly = "<polygon fill=\"#d0d0d0\" fill-opacity=\"0.6\" "
                       "stroke=\"none\" points=\"";
    for (size_t i = 0; i < curve.size(); ++i) {
      double y = std::isfinite(curve[i].second)
                     ? std::clamp(curve[i].second, -rmax, rmax)
                     : ycap;
      if (i) poly += ' ';
      append_num(poly, f.px(curve[i].first));
      poly += ',';
      append_num(poly, f.py(y));
    }
    poly += ' ';
    append_num(poly, f.px(curve.back().first));
    poly += ',';
    append_num(poly, f.py(ycap));
    poly += ' ';
    append_num(poly, f.px(curve.front().first));
    poly += ',';
    append_num(poly, f.py(ycap));
    poly += "\"/>\n";
    out += poly;
  };
  shade(u11, rmax);
  shade(l11, -rmax);

  polyline(out, f, u11, "#1f77b4");
  polyline(out, f, l11, "#1f77b4");
  polyline(out, f, u12, "#d62728", "stroke-dasharray=\"6 3\" ");
  polyline(out, f, l12, "#d62728", "stroke-dasharray=\"6 3\" ");

  // Global component: the planes theta = +-pi.
  for (double th : {-kPiLocal, kPiLocal}) {
    std::vector<std::pair<double, double>> seg = {{th, -rmax}, {th, rmax}};
    polyline(out, f, seg, "#555555", "stroke-dasharray=\"2 2\" ");
  }
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string plot_svg(const std::string& section, const std::string& csv_text,
                     double theta0, double band) {
  bool blank = csv_text.find_first_not_of(" \t\r\n") == std::string::npos;
  if (section == "cut_locus_plane") {
    Csv csv = blank ? Csv{} : parse_csv(csv_text, 3);
    return cutlocus_svg(csv);
  }
  if (section == "caustic_section" || section == "sphere_section") {
    Csv csv = blank ? Csv{} : parse_csv(csv_text, 5);
    return scatter_svg(csv, theta0, band);
  }
  throw std::domain_error("plot: unknown section '" + section + "'");
}

}  // namespace se2sr
