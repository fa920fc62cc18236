#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tmtb/approx.hpp"
#include "tmtb/geometry.hpp"

namespace tmtb {

struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error("line " + std::to_string(l) + ", col " +
                           std::to_string(c) + ": " + msg),
        line(l),
        column(c) {}
};

struct ParseResult {
  std::vector<Trajectory> trajectories;
  std::vector<std::string> warnings;
};

// Line-oriented trajectory text: `#` comments, one trajectory per line as
// `x1,y1 x2,y2 ...`. Adjacent duplicate waypoints collapse with a warning.
inline ParseResult parse_trajectories_text(std::istream& in) {
  ParseResult result;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);

    std::vector<Point> pts;
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
        ++pos;
    };
    auto read_number = [&]() -> double {
      skip_ws();
      const std::size_t start = pos;
      double value = 0.0;
      const auto* begin = line.data() + pos;
      const auto* end = line.data() + line.size();
      const auto res = std::from_chars(begin, end, value);
      if (res.ec == std::errc::result_out_of_range)
        throw ParseError("coordinate overflows double precision", lineno,
                         static_cast<int>(start) + 1);
      if (res.ec != std::errc())
        throw ParseError("malformed number", lineno,
                         static_cast<int>(start) + 1);
      if (!std::isfinite(value))
        throw ParseError("non-finite coordinate", lineno,
                         static_cast<int>(start) + 1);
      pos = static_cast<std::size_t>(res.ptr - line.data());
      return value;
    };

    skip_ws();
    while (pos < line.size()) {
      const double x = read_number();
      skip_ws();
      if (pos >= line.size() || line[pos] != ',')
        throw ParseError("expected ',' between coordinates", lineno,
                         static_cast<int>(pos) + 1);
      ++pos;
      const double y = read_number();
      const Point p{x, y};
      if (!pts.empty() && points_coincide(pts.back(), p)) {
        result.warnings.push_back("line " + std::to_string(lineno) +
                                  ": collapsed duplicate waypoint");
      } else {
        pts.push_back(p);
      }
      skip_ws();
    }
    if (!pts.empty()) result.trajectories.push_back(Trajectory(std::move(pts)));
  }
  return result;
}

inline ParseResult parse_trajectories_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return parse_trajectories_text(in);
}

inline std::string format_number(double v) {
  // Shortest decimal that round-trips.
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) break;
  }
  return buf;
}

inline void write_trajectories_text(std::ostream& out,
                                    const TrajectorySet& ts) {
  for (const auto& t : ts.trajectories) {
    bool first = true;
    for (const Point& w : t.waypoints()) {
      if (!first) out << ' ';
      out << format_number(w.x) << ',' << format_number(w.y);
      first = false;
    }
    out << '\n';
  }
}

// One solver run, printable as a single line of key=value fields (fixed
// order) for machine consumption.
struct ResultRecord {
  std::string solver;
  Point center{0.0, 0.0};
  double radius = 0.0;
  std::vector<double> distances;  // per-trajectory distance to the center
  double max_residual = 0.0;      // max over max(0, distance - radius)
  double wall_time_ms = 0.0;
  std::string params;

  // Every reported trajectory must actually be touched by the ball.
  bool residual_ok() const {
    const double tol = std::max(kAbsTol, kRelTol * std::max(1.0, radius));
    for (double d : distances)
      if (d > radius + tol) return false;
    return true;
  }

  std::string to_line() const {
    std::ostringstream out;
    out << "solver=" << solver << " center=" << format_number(center.x) << ','
        << format_number(center.y) << " radius=" << format_number(radius)
        << " distances=";
    for (std::size_t i = 0; i < distances.size(); ++i) {
      if (i) out << ';';
      out << format_number(distances[i]);
    }
    out << " max_residual=" << format_number(max_residual)
        << " wall_time_ms=" << format_number(wall_time_ms) << " params="
        << params;
    return out.str();
  }
};

inline ResultRecord make_result_record(std::string solver, const Ball& ball,
                                       const TrajectorySet& ts,
                                       double wall_time_ms,
                                       std::string params) {
  ResultRecord rec;
  rec.solver = std::move(solver);
  rec.center = ball.center;
  rec.radius = ball.radius;
  rec.distances = trajectory_distances(ball.center, ts);
  for (double d : rec.distances)
    rec.max_residual = std::max(rec.max_residual, d - ball.radius);
  rec.max_residual = std::max(rec.max_residual, 0.0);
  rec.wall_time_ms = wall_time_ms;
  rec.params = std::move(params);
  return rec;
}

struct SvgOptions {
  bool raise_overlaps = false;
  double raise_step = 0.08;
  double margin = 1.0;
  double scale = 60.0;  // pixels per input unit
};

namespace detail {

inline bool segments_exactly_overlap(const Segment& s1, const Segment& s2) {
  const auto ix = segment_segment_intersection(s1, s2);
  return ix.kind == SegIntersection::Kind::Overlap;
}

}  // namespace detail

// SVG figure: one colored polyline per trajectory, the ball as a black
// circle (a dot when radius is 0), ghosts as thin gray polylines. With
// raise_overlaps, trajectories whose segments exactly overlap an earlier
// one are nudged upward for legibility (render-only).
inline std::string render_svg(const TrajectorySet& ts,
                              const std::optional<Ball>& ball,
                              const GhostSet* ghosts,
                              const SvgOptions& opt = {}) {
  static const char* kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231",
                                   "#911eb4", "#46f0f0", "#f032e6", "#9a6324",
                                   "#800000", "#808000", "#000075", "#2f4f4f"};
  constexpr int kPaletteSize = 12;

  double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
  auto grow = [&](Point p, double r = 0.0) {
    xmin = std::min(xmin, p.x - r);
    ymin = std::min(ymin, p.y - r);
    xmax = std::max(xmax, p.x + r);
    ymax = std::max(ymax, p.y + r);
  };
  for (const auto& t : ts.trajectories)
    for (const Point& w : t.waypoints()) grow(w);
  if (ball) grow(ball->center, ball->radius);
  if (ghosts)
    for (const auto& g : ghosts->trajectories)
      for (const Point& w : g.waypoints()) grow(w);
  xmin -= opt.margin;
  ymin -= opt.margin;
  xmax += opt.margin;
  ymax += opt.margin;

  const double s = opt.scale;
  auto sx = [&](double x) { return (x - xmin) * s; };
  auto sy = [&](double y) { return (ymax - y) * s; };  // flip y for SVG

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << format_number((xmax - xmin) * s) << "\" height=\""
      << format_number((ymax - ymin) * s) << "\">\n";

  if (ghosts) {
    for (const auto& g : ghosts->trajectories) {
      if (g.waypoints().size() < 2) continue;
      svg << "  <polyline class=\"ghost\" fill=\"none\" stroke=\"#bbbbbb\" "
             "stroke-width=\"0.7\" points=\"";
      for (const Point& w : g.waypoints())
        svg << format_number(sx(w.x)) << ',' << format_number(sy(w.y)) << ' ';
      svg << "\"/>\n";
    }
  }

  std::vector<double> raise(ts.size(), 0.0);
  if (opt.raise_overlaps) {
    auto overlaps_earlier = [&](std::size_t i) {
      for (std::size_t j = 0; j < i; ++j)
        for (std::size_t a = 0; a < ts.trajectories[i].segment_count(); ++a)
          for (std::size_t b = 0; b < ts.trajectories[j].segment_count(); ++b)
            if (detail::segments_exactly_overlap(ts.trajectories[i].segment(a),
                                                 ts.trajectories[j].segment(b)))
              return true;
      return false;
    };
    for (std::size_t i = 1; i < ts.size(); ++i)
      if (overlaps_earlier(i)) raise[i] = raise[i - 1] + opt.raise_step;
  }

  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& pts = ts.trajectories[i].waypoints();
    const char* color = kPalette[i % kPaletteSize];
    if (pts.size() == 1) {
      svg << "  <circle class=\"trajectory\" cx=\""
          << format_number(sx(pts[0].x)) << "\" cy=\""
          << format_number(sy(pts[0].y + raise[i])) << "\" r=\"3\" fill=\""
          << color << "\"/>\n";
      continue;
    }
    svg << "  <polyline class=\"trajectory\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const Point& w : pts)
      svg << format_number(sx(w.x)) << ','
          << format_number(sy(w.y + raise[i])) << ' ';
    svg << "\"/>\n";
  }

  if (ball) {
    if (ball->radius * s < 1.0) {
      svg << "  <circle class=\"ball\" cx=\"" << format_number(sx(ball->center.x))
          << "\" cy=\"" << format_number(sy(ball->center.y))
          << "\" r=\"2.5\" fill=\"black\"/>\n";
    } else {
      svg << "  <circle class=\"ball\" cx=\"" << format_number(sx(ball->center.x))
          << "\" cy=\"" << format_number(sy(ball->center.y)) << "\" r=\""
          << format_number(ball->radius * s)
          << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace tmtb
