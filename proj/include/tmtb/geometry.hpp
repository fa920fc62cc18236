#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmtb {

// Absolute tolerance for point coincidence / degeneracy decisions.
inline constexpr double kPointTol = 1e-9;
// Relative tolerance for radius/distance comparisons, with an absolute floor.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

inline bool nearly_equal(double a, double b,
                         double rel = kRelTol, double abs = kAbsTol) {
  return std::fabs(a - b) <= std::max(abs, rel * std::max(std::fabs(a), std::fabs(b)));
}

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point() = default;
  Point(double px, double py) : x(px), y(py) {
    if (!std::isfinite(x) || !std::isfinite(y))
      throw std::invalid_argument("Point: coordinates must be finite");
  }

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double dist(Point a, Point b) { return norm(a - b); }

inline bool points_coincide(Point a, Point b, double tol = kPointTol) {
  return dist(a, b) <= tol;
}

// Strict lexicographic order, used for deterministic tie-breaking.
inline bool lex_less(Point a, Point b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

inline Point midpoint(Point a, Point b) {
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

struct Segment {
  Point a;
  Point b;

  Segment(Point pa, Point pb) : a(pa), b(pb) {
    if (points_coincide(a, b))
      throw std::invalid_argument("Segment: endpoints coincide under tolerance");
  }

  double length() const { return dist(a, b); }
  Point direction() const {
    const double len = length();
    return {(b.x - a.x) / len, (b.y - a.y) / len};
  }
  // Left unit normal of the direction.
  Point normal() const {
    const Point u = direction();
    return {-u.y, u.x};
  }
  Point at(double lambda) const {
    return {(1.0 - lambda) * a.x + lambda * b.x,
            (1.0 - lambda) * a.y + lambda * b.y};
  }
};

struct Ball {
  Point center;
  double radius = 0.0;

  Ball() = default;
  Ball(Point c, double r) : center(c), radius(r) {
    if (!(r >= 0.0))
      throw std::invalid_argument("Ball: radius must be >= 0");
  }
};

class Trajectory {
 public:
  explicit Trajectory(std::vector<Point> waypoints)
      : waypoints_(std::move(waypoints)) {
    if (waypoints_.empty())
      throw std::invalid_argument("Trajectory: needs at least one waypoint");
    for (std::size_t i = 1; i < waypoints_.size(); ++i) {
      if (points_coincide(waypoints_[i - 1], waypoints_[i]))
        throw std::invalid_argument(
            "Trajectory: consecutive waypoints coincide (index " +
            std::to_string(i) + ")");
    }
  }

  const std::vector<Point>& waypoints() const { return waypoints_; }
  std::size_t segment_count() const { return waypoints_.size() - 1; }
  Segment segment(std::size_t j) const {
    return Segment(waypoints_[j], waypoints_[j + 1]);
  }
  std::vector<Segment> segments() const {
    std::vector<Segment> out;
    out.reserve(segment_count());
    for (std::size_t j = 0; j < segment_count(); ++j) out.push_back(segment(j));
    return out;
  }

 private:
  std::vector<Point> waypoints_;
};

struct TrajectorySet {
  std::vector<Trajectory> trajectories;

  explicit TrajectorySet(std::vector<Trajectory> ts)
      : trajectories(std::move(ts)) {
    if (trajectories.empty())
      throw std::invalid_argument("TrajectorySet: needs at least one trajectory");
  }

  std::size_t size() const { return trajectories.size(); }
};

struct ClosestOnSegment {
  double distance = 0.0;
  double lambda = 0.0;  // minimizing parameter in [0,1]
};

inline ClosestOnSegment closest_point_segment(Point p, const Segment& s) {
  const Point d = s.b - s.a;
  const double len2 = dot(d, d);
  double lambda = dot(p - s.a, d) / len2;
  lambda = std::clamp(lambda, 0.0, 1.0);
  return {dist(p, s.at(lambda)), lambda};
}

inline double dist_point_segment(Point p, const Segment& s) {
  return closest_point_segment(p, s).distance;
}

inline double dist_point_trajectory(Point p, const Trajectory& t) {
  if (t.segment_count() == 0) return dist(p, t.waypoints().front());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < t.segment_count(); ++j)
    best = std::min(best, dist_point_segment(p, t.segment(j)));
  return best;
}

inline double touching_radius(Point c, const TrajectorySet& ts) {
  double r = 0.0;
  for (const auto& t : ts.trajectories)
    r = std::max(r, dist_point_trajectory(c, t));
  return r;
}

// Early-exit variant: once the running max exceeds `cap`, the final value
// no longer matters and iteration stops. Result is exact when <= cap.
inline double touching_radius_capped(Point c, const TrajectorySet& ts,
                                     double cap) {
  double r = 0.0;
  for (const auto& t : ts.trajectories) {
    r = std::max(r, dist_point_trajectory(c, t));
    if (r > cap) return r;
  }
  return r;
}

// As above, scanning in a caller-chosen order. Fronting mutually distant
// trajectories makes hopeless candidates fail on the first few distances.
inline double touching_radius_capped_ordered(
    Point c, const TrajectorySet& ts, double cap,
    const std::vector<std::size_t>& order) {
  double r = 0.0;
  for (std::size_t idx : order) {
    r = std::max(r, dist_point_trajectory(c, ts.trajectories[idx]));
    if (r > cap) return r;
  }
  return r;
}

inline std::vector<double> trajectory_distances(Point c,
                                                const TrajectorySet& ts) {
  std::vector<double> out;
  out.reserve(ts.size());
  for (const auto& t : ts.trajectories) out.push_back(dist_point_trajectory(c, t));
  return out;
}

// One-pass 2-approximation of the diameter: anchor at the first waypoint,
// take the farther endpoint of every segment (the farthest point of a
// segment from any point is an endpoint).
inline double diameter_2approx(const TrajectorySet& ts) {
  const Point anchor = ts.trajectories.front().waypoints().front();
  double best = 0.0;
  for (const auto& t : ts.trajectories)
    for (const Point& w : t.waypoints())
      best = std::max(best, dist(anchor, w));
  return best;
}

struct SegSegClosest {
  double distance = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

inline SegSegClosest closest_segment_segment(const Segment& s1,
                                             const Segment& s2) {
  const Point d1 = s1.b - s1.a;
  const Point d2 = s2.b - s2.a;
  const Point r = s1.a - s2.a;
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);
  const double c = dot(d1, r);
  const double b = dot(d1, d2);
  const double denom = a * e - b * b;

  double s = 0.0;
  if (denom > kAbsTol * a * e)
    s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
  double t = (b * s + f) / e;
  if (t < 0.0) {
    t = 0.0;
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (t > 1.0) {
    t = 1.0;
    s = std::clamp((b - c) / a, 0.0, 1.0);
  }
  return {dist(s1.at(s), s2.at(t)), s, t};
}

inline double dist_segment_segment(const Segment& s1, const Segment& s2) {
  return closest_segment_segment(s1, s2).distance;
}

struct SegIntersection {
  enum class Kind { None, Crossing, Overlap };
  Kind kind = Kind::None;
  Point p;  // crossing point, or overlap start
  Point q;  // overlap end (Overlap only)
};

inline SegIntersection segment_segment_intersection(const Segment& s1,
                                                    const Segment& s2) {
  const Point d1 = s1.b - s1.a;
  const Point d2 = s2.b - s2.a;
  const double denom = cross(d1, d2);
  const double scale = std::max(norm(d1), norm(d2));

  if (std::fabs(denom) <= kPointTol * scale * scale) {
    // Parallel. Check collinearity via the offset of s2.a from line(s1).
    const double off = cross(d1, s2.a - s1.a) / norm(d1);
    if (std::fabs(off) > kPointTol) return {};
    // Collinear: overlap of parameter ranges along d1.
    const double len2 = dot(d1, d1);
    double t0 = dot(s2.a - s1.a, d1) / len2;
    double t1 = dot(s2.b - s1.a, d1) / len2;
    if (t0 > t1) std::swap(t0, t1);
    const double lo = std::max(0.0, t0);
    const double hi = std::min(1.0, t1);
    if (hi < lo - kPointTol / norm(d1)) return {};
    const Point pa = s1.at(std::clamp(lo, 0.0, 1.0));
    const Point pb = s1.at(std::clamp(hi, 0.0, 1.0));
    if (points_coincide(pa, pb))
      return {SegIntersection::Kind::Crossing, pa, pa};
    return {SegIntersection::Kind::Overlap, pa, pb};
  }

  const double t = cross(s2.a - s1.a, d2) / denom;
  const double u = cross(s2.a - s1.a, d1) / denom;
  const double tol1 = kPointTol / norm(d1);
  const double tol2 = kPointTol / norm(d2);
  if (t < -tol1 || t > 1.0 + tol1 || u < -tol2 || u > 1.0 + tol2) return {};
  const Point p = s1.at(std::clamp(t, 0.0, 1.0));
  return {SegIntersection::Kind::Crossing, p, p};
}

}  // namespace tmtb
