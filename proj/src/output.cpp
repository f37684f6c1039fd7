#include "coordcycle/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace coordcycle {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

void write_trajectory_csv(const std::filesystem::path &path,
                          const Trajectory &traj) {
  const bool full = traj.full_matrix();
  std::string text = full ? "t,x,y,a,b,c,d\n" : "t,x,y\n";
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const Sample &s = traj.samples[i];
    text += format_double(s.t) + ',' + format_double(s.state.x) + ',' +
            format_double(s.state.y);
    if (full) {
      const PayoffMatrixd &m = traj.payoffs.at(i);
      text += ',' + format_double(m(0, 0)) + ',' + format_double(m(0, 1)) +
              ',' + format_double(m(1, 0)) + ',' + format_double(m(1, 1));
    }
    text += '\n';
  }
  write_text(path, text);
}

void write_crossings_csv(const std::filesystem::path &path,
                         const Trajectory &traj) {
  std::string text = "n,t,x,direction\n";
  for (std::size_t i = 0; i < traj.crossings.size(); ++i) {
    const CrossingEvent &c = traj.crossings[i];
    text += std::to_string(i + 1) + ',' + format_double(c.t) + ',' +
            format_double(c.x) + ',' + to_string(c.direction) + '\n';
  }
  write_text(path, text);
}

namespace {

std::vector<double> parse_row(const std::string &line,
                              const std::filesystem::path &path,
                              std::size_t lineno) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    char *end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0') {
      throw IoError(path.string() + ":" + std::to_string(lineno) +
                    ": not a number: '" + cell + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

Trajectory read_trajectory_csv(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  std::size_t width = 0;
  if (header == "t,x,y") {
    width = 3;
  } else if (header == "t,x,y,a,b,c,d") {
    width = 7;
  } else {
    throw IoError(path.string() + ": unexpected header '" + header + "'");
  }
  Trajectory traj;
  std::string line;
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    const std::vector<double> row = parse_row(line, path, lineno);
    if (row.size() != width) {
      throw IoError(path.string() + ":" + std::to_string(lineno) +
                    ": expected " + std::to_string(width) + " columns");
    }
    traj.samples.push_back({row[0], {row[1], row[2]}});
    if (width == 7) {
      traj.payoffs.push_back(make_payoff_matrix(row[3], row[4], row[5], row[6]));
    }
  }
  return traj;
}

namespace {

// Fixed-precision coordinates keep the document byte-stable.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

struct Frame {
  double left, top, plot_w, plot_h;
  double y_lo, y_hi;

  double px(double x) const { return left + x * plot_w; }
  double py(double y) const {
    return top + (y_hi - y) / (y_hi - y_lo) * plot_h;
  }
};

double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

bool constant(const Trajectory &t) {
  return std::all_of(t.samples.begin(), t.samples.end(), [&](const Sample &s) {
    return s.state == t.samples.front().state;
  });
}

const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                "#9467bd", "#ff7f0e", "#17becf"};

}  // namespace

std::string render_phase_portrait(const std::vector<PortraitTrace> &traces,
                                  DynamicKind kind, const RenderStyle &style) {
  if (traces.empty()) throw DomainError("phase portrait needs a trajectory");
  double y_lo = std::numeric_limits<double>::infinity();
  double y_hi = -y_lo;
  for (const PortraitTrace &tr : traces) {
    for (const Sample &s : tr.trajectory->samples) {
      y_lo = std::min(y_lo, s.state.y);
      y_hi = std::max(y_hi, s.state.y);
    }
    y_lo = std::min(y_lo, 0.0);
    y_hi = std::max(y_hi, 1.0);
  }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  const double margin = 56.0;
  const Frame f{margin, 32.0, style.width - margin - 16.0,
                style.height - 32.0 - margin, y_lo, y_hi};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width
      << "\" height=\"" << style.height << "\" viewBox=\"0 0 " << style.width
      << ' ' << style.height << "\">\n";
  svg << "<style>\n"
         ".frame{fill:none;stroke:#000;stroke-width:1}\n"
         ".tick{font:11px sans-serif;fill:#333}\n"
         ".title{font:13px sans-serif;fill:#000}\n"
         ".diagonal{stroke:#888;stroke-width:1;stroke-dasharray:4 3}\n"
         ".y-nullcline{stroke:#aaa;stroke-width:1}\n"
         ".x-nullcline{fill:none;stroke:#aaa;stroke-width:1;"
         "stroke-dasharray:2 2}\n"
         ".steady-state{fill:#000}\n"
         ".br-threshold{fill:#fff;stroke:#000;stroke-width:1}\n";
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const char *c = kPalette[i % std::size(kPalette)];
    svg << ".traj-" << i << "{fill:none;stroke:" << c
        << ";stroke-width:1.2}\n.traj-point.traj-" << i << "{fill:" << c
        << "}\n";
  }
  svg << "</style>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << style.width << "\" height=\""
      << style.height << "\" fill=\"#fff\"/>\n";
  if (!style.title.empty()) {
    svg << "<text class=\"title\" x=\"" << fmt(f.left) << "\" y=\"20\">"
        << style.title << "</text>\n";
  }
  svg << "<rect class=\"frame\" x=\"" << fmt(f.left) << "\" y=\""
      << fmt(f.top) << "\" width=\"" << fmt(f.plot_w) << "\" height=\""
      << fmt(f.plot_h) << "\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double x = i / 5.0;
    svg << "<text class=\"tick\" x=\"" << fmt(f.px(x) - 8) << "\" y=\""
        << fmt(f.top + f.plot_h + 16) << "\">" << fmt(x).substr(0, 3)
        << "</text>\n";
  }
  const double step = nice_step(y_hi - y_lo);
  for (double y = std::ceil(y_lo / step) * step; y <= y_hi; y += step) {
    char label[32];
    std::snprintf(label, sizeof label, "%g", std::abs(y) < 1e-12 ? 0.0 : y);
    svg << "<text class=\"tick\" x=\"4\" y=\"" << fmt(f.py(y) + 4) << "\">"
        << label << "</text>\n";
  }
  svg << "<text class=\"tick\" x=\"" << fmt(f.left + f.plot_w / 2)
      << "\" y=\"" << style.height - 8 << "\">x</text>\n";
  svg << "<text class=\"tick\" x=\"18\" y=\"" << fmt(f.top + 12)
      << "\">y</text>\n";

  const double d_lo = std::max(0.0, y_lo);
  const double d_hi = std::min(1.0, y_hi);
  svg << "<line class=\"diagonal\" x1=\"" << fmt(f.px(d_lo)) << "\" y1=\""
      << fmt(f.py(d_lo)) << "\" x2=\"" << fmt(f.px(d_hi)) << "\" y2=\""
      << fmt(f.py(d_hi)) << "\"/>\n";

  std::set<std::pair<double, double>> drawn_k;
  std::set<std::pair<double, double>> drawn_markers;
  for (const PortraitTrace &tr : traces) {
    const ModelParams &p = tr.params;
    if (drawn_k.insert({p.k, 0.0}).second) {
      svg << "<line class=\"y-nullcline\" x1=\"" << fmt(f.px(p.k))
          << "\" y1=\"" << fmt(f.top) << "\" x2=\"" << fmt(f.px(p.k))
          << "\" y2=\"" << fmt(f.top + f.plot_h) << "\"/>\n";
    }
    if (kind == DynamicKind::Logit &&
        drawn_k.insert({p.eta / p.s, 1.0}).second) {
      svg << "<polyline class=\"x-nullcline\" points=\"";
      bool first = true;
      for (int i = 1; i < 400; ++i) {
        const double x = i / 400.0;
        const double y = x_nullcline(kind, p, x);
        if (y < y_lo || y > y_hi) continue;
        svg << (first ? "" : " ") << fmt(f.px(x)) << ',' << fmt(f.py(y));
        first = false;
      }
      svg << "\"/>\n";
    }
  }
  for (const PortraitTrace &tr : traces) {
    const ModelParams &p = tr.params;
    double ss_y = p.k;
    if (kind == DynamicKind::Logit) {
      ss_y = p.k - p.eta / p.s * std::log(p.k / (1.0 - p.k));
    }
    if (drawn_markers.insert({p.k, ss_y}).second) {
      svg << "<circle class=\"steady-state\" cx=\"" << fmt(f.px(p.k))
          << "\" cy=\"" << fmt(f.py(ss_y)) << "\" r=\"3\"/>\n";
    }
    if (kind == DynamicKind::BestResponse) {
      const BRGeometry g = br_geometry(p);
      for (double v : {g.alpha, g.beta}) {
        if (drawn_markers.insert({v, v}).second) {
          svg << "<circle class=\"br-threshold\" cx=\"" << fmt(f.px(v))
              << "\" cy=\"" << fmt(f.py(v)) << "\" r=\"3\"/>\n";
        }
      }
    }
  }

  for (std::size_t i = 0; i < traces.size(); ++i) {
    const Trajectory &t = *traces[i].trajectory;
    if (t.samples.empty()) continue;
    if (constant(t)) {
      const JointStated &s = t.samples.front().state;
      svg << "<circle class=\"traj-point traj-" << i << "\" cx=\""
          << fmt(f.px(s.x)) << "\" cy=\"" << fmt(f.py(s.y))
          << "\" r=\"3\"><title>" << traces[i].label << "</title></circle>\n";
      continue;
    }
    const std::size_t n = t.samples.size();
    const std::size_t stride =
        std::max<std::size_t>(1, (n + style.max_points - 1) / style.max_points);
    svg << "<polyline class=\"traj traj-" << i << "\" points=\"";
    for (std::size_t j = 0; j < n; j += stride) {
      const JointStated &s = t.samples[j].state;
      svg << (j == 0 ? "" : " ") << fmt(f.px(s.x)) << ',' << fmt(f.py(s.y));
    }
    if ((n - 1) % stride != 0) {
      const JointStated &s = t.samples.back().state;
      svg << ' ' << fmt(f.px(s.x)) << ',' << fmt(f.py(s.y));
    }
    svg << "\"><title>" << traces[i].label << "</title></polyline>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_phase_portrait(const std::vector<Trajectory> &trajectories,
                                  const ModelParams &p, DynamicKind kind,
                                  const RenderStyle &style) {
  std::vector<PortraitTrace> traces;
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    traces.push_back({&trajectories[i], p, "trajectory " + std::to_string(i)});
  }
  return render_phase_portrait(traces, kind, style);
}

}  // namespace coordcycle
