#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "tmtb/geometry.hpp"

namespace tmtb {

// An endpoint or a segment interior; equidistance cases among features
// generate every candidate center of the minimum touching ball.
struct Feature {
  enum class Kind { Endpoint, Interior };
  Kind kind;
  Point point;                     // Endpoint only
  std::optional<Segment> segment;  // Interior only
  Point udir{1.0, 0.0};            // Interior only: cached unit direction
  std::size_t owner = 0;

  static Feature endpoint(Point p, std::size_t owner) {
    return {Kind::Endpoint, p, std::nullopt, {1.0, 0.0}, owner};
  }
  static Feature interior(Segment s, std::size_t owner) {
    const Point u = s.direction();
    return {Kind::Interior, s.a, s, u, owner};
  }
};

struct Candidate {
  enum class Kind { PairMin, TripleEquidistant, Crossing, Waypoint };
  Point center;
  Kind kind;
};

namespace detail {

// Infinite line through p0 with unit direction u.
struct Line {
  Point p0;
  Point u;

  static Line of(const Segment& s) { return {s.a, s.direction()}; }
  Point normal() const { return {-u.y, u.x}; }
  double signed_offset(Point x) const { return cross(u, x - p0); }
};

inline std::optional<Point> line_line_intersection(const Line& l1,
                                                   const Line& l2) {
  const double denom = cross(l1.u, l2.u);
  if (std::fabs(denom) < 1e-14) return std::nullopt;
  const double t = cross(l2.p0 - l1.p0, l2.u) / denom;
  if (!std::isfinite(t)) return std::nullopt;
  return l1.p0 + t * l1.u;
}

// Perpendicular bisector of two points (undefined if coincident).
inline std::optional<Line> point_bisector(Point a, Point b) {
  const double d = dist(a, b);
  if (d <= kPointTol) return std::nullopt;
  const Point dir{-(b.y - a.y) / d, (b.x - a.x) / d};
  return Line{midpoint(a, b), dir};
}

struct LineBisectors {
  Line lines[2];
  int count = 0;
};

// Angle bisectors of two lines: two lines through the crossing, or the
// single midline when parallel.
inline LineBisectors line_bisectors(const Line& l1, const Line& l2) {
  LineBisectors out;
  const double denom = cross(l1.u, l2.u);
  if (std::fabs(denom) < 1e-12) {
    const double off = l1.signed_offset(l2.p0);
    const Point n = l1.normal();
    out.lines[out.count++] = Line{l1.p0 + (0.5 * off) * n, l1.u};
    return out;
  }
  const Point q = *line_line_intersection(l1, l2);
  Point s = l1.u + l2.u;
  Point d = l1.u - l2.u;
  const double ns = std::sqrt(dot(s, s));
  const double nd = std::sqrt(dot(d, d));
  if (ns > 1e-12) out.lines[out.count++] = Line{q, {s.x / ns, s.y / ns}};
  if (nd > 1e-12) out.lines[out.count++] = Line{q, {d.x / nd, d.y / nd}};
  return out;
}

// Points on `probe` equidistant from point p and the infinite line `l`:
// roots of |x - p|^2 = (n . (x - a))^2 along x = probe.p0 + t probe.u.
template <class Emit>
inline void append_point_line_equidistant(const Line& probe, Point p,
                                          const Line& l, Emit&& out) {
  const Point n = l.normal();
  const Point w = probe.p0 - p;
  const double s0 = dot(n, probe.p0 - l.p0);
  const double sv = dot(n, probe.u);
  const double a = dot(probe.u, probe.u) - sv * sv;
  const double b = 2.0 * (dot(w, probe.u) - s0 * sv);
  const double c = dot(w, w) - s0 * s0;

  auto emit = [&](double t) {
    if (!std::isfinite(t)) return;
    const double x = probe.p0.x + t * probe.u.x;
    const double y = probe.p0.y + t * probe.u.y;
    if (std::isfinite(x) && std::isfinite(y)) out(Point{x, y});
  };
  if (std::fabs(a) < 1e-14) {
    if (std::fabs(b) > 1e-14) emit(-c / b);
    return;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  const double t1 = q / a;
  emit(t1);
  if (std::fabs(q) > 1e-300) {
    const double t2 = c / q;
    if (t2 != t1) emit(t2);
  }
}

inline std::optional<Point> circumcenter(Point a, Point b, Point c) {
  const Point ab = b - a;
  const Point ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double scale = std::max(norm(ab), norm(ac));
  if (std::fabs(d) < std::max(1e-12 * scale * scale, 1e-300))
    return std::nullopt;
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const double cx = a.x + (ac.y * ab2 - ab.y * ac2) / d;
  const double cy = a.y + (ab.x * ac2 - ac.x * ab2) / d;
  if (!std::isfinite(cx) || !std::isfinite(cy)) return std::nullopt;
  return Point{cx, cy};
}

// Min distance between two features as point sets (endpoint = point,
// interior = full segment).
inline double feature_distance(const Feature& f1, const Feature& f2) {
  const bool e1 = f1.kind == Feature::Kind::Endpoint;
  const bool e2 = f2.kind == Feature::Kind::Endpoint;
  if (e1 && e2) return dist(f1.point, f2.point);
  if (e1) return dist_point_segment(f1.point, *f2.segment);
  if (e2) return dist_point_segment(f2.point, *f1.segment);
  return dist_segment_segment(*f1.segment, *f2.segment);
}

struct BBox {
  double xmin, ymin, xmax, ymax;
  bool contains(Point p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
};

inline BBox bounding_box(const TrajectorySet& ts, double expand) {
  BBox b{1e300, 1e300, -1e300, -1e300};
  for (const auto& t : ts.trajectories)
    for (const Point& w : t.waypoints()) {
      b.xmin = std::min(b.xmin, w.x);
      b.ymin = std::min(b.ymin, w.y);
      b.xmax = std::max(b.xmax, w.x);
      b.ymax = std::max(b.ymax, w.y);
    }
  b.xmin -= expand;
  b.ymin -= expand;
  b.xmax += expand;
  b.ymax += expand;
  return b;
}

}  // namespace detail

// Candidate centers generated by a feature pair (edge minima of the
// farthest-trajectory Voronoi diagram).
inline std::vector<Point> pair_candidates(const Feature& f1,
                                          const Feature& f2) {
  using K = Feature::Kind;
  std::vector<Point> out;

  if (f1.kind == K::Endpoint && f2.kind == K::Endpoint) {
    out.push_back(midpoint(f1.point, f2.point));
    return out;
  }
  if (f1.kind != f2.kind) {
    const Feature& e = f1.kind == K::Endpoint ? f1 : f2;
    const Feature& in = f1.kind == K::Endpoint ? f2 : f1;
    const Segment& s = *in.segment;
    const Point d = s.b - s.a;
    const double lambda = dot(e.point - s.a, d) / dot(d, d);
    if (lambda >= 0.0 && lambda <= 1.0)
      out.push_back(midpoint(e.point, s.at(lambda)));
    return out;
  }

  // Interior / interior.
  const Segment& s1 = *f1.segment;
  const Segment& s2 = *f2.segment;
  const Point u1 = s1.direction();
  const Point u2 = s2.direction();
  if (std::fabs(cross(u1, u2)) < 1e-9) {
    // Parallel: one representative point on the midline over the overlap
    // of the axial ranges.
    const double t0 = dot(s2.a - s1.a, u1);
    const double t1 = dot(s2.b - s1.a, u1);
    const double lo = std::max(0.0, std::min(t0, t1));
    const double hi = std::min(s1.length(), std::max(t0, t1));
    if (hi < lo) return out;
    const Point on1 = s1.a + (0.5 * (lo + hi)) * u1;
    const Point d2 = s2.b - s2.a;
    const double mu = std::clamp(dot(on1 - s2.a, d2) / dot(d2, d2), 0.0, 1.0);
    out.push_back(midpoint(on1, s2.at(mu)));
    return out;
  }
  const auto ix = segment_segment_intersection(s1, s2);
  if (ix.kind == SegIntersection::Kind::Crossing) out.push_back(ix.p);
  return out;
}

namespace detail {

// Candidate centers equidistant from three features, streamed to `emit`
// without allocation (this sits in the innermost loop of exact_tmtb).
template <class Emit>
inline void triple_candidates_emit(const Feature& f1, const Feature& f2,
                                   const Feature& f3, Emit&& emit) {
  using K = Feature::Kind;

  const Feature* fs[3] = {&f1, &f2, &f3};
  const Feature* endpoints[3];
  const Feature* interiors[3];
  int ne = 0, ni = 0;
  for (const Feature* f : fs) {
    if (f->kind == K::Endpoint)
      endpoints[ne++] = f;
    else
      interiors[ni++] = f;
  }

  switch (ne) {
    case 3: {
      const auto c = circumcenter(endpoints[0]->point, endpoints[1]->point,
                                  endpoints[2]->point);
      if (c) emit(*c);
      break;
    }
    case 2: {
      const auto bis =
          point_bisector(endpoints[0]->point, endpoints[1]->point);
      if (!bis) break;
      append_point_line_equidistant(
          *bis, endpoints[0]->point,
          Line{interiors[0]->segment->a, interiors[0]->udir}, emit);
      break;
    }
    case 1: {
      const Line l1{interiors[0]->segment->a, interiors[0]->udir};
      const Line l2{interiors[1]->segment->a, interiors[1]->udir};
      const LineBisectors bis = line_bisectors(l1, l2);
      for (int i = 0; i < bis.count; ++i)
        append_point_line_equidistant(bis.lines[i], endpoints[0]->point, l1,
                                      emit);
      break;
    }
    default: {
      const Line l1{interiors[0]->segment->a, interiors[0]->udir};
      const Line l2{interiors[1]->segment->a, interiors[1]->udir};
      const Line l3{interiors[2]->segment->a, interiors[2]->udir};
      const LineBisectors b12 = line_bisectors(l1, l2);
      const LineBisectors b23 = line_bisectors(l2, l3);
      for (int i = 0; i < b12.count; ++i)
        for (int j = 0; j < b23.count; ++j) {
          const auto p = line_line_intersection(b12.lines[i], b23.lines[j]);
          if (p) emit(*p);
        }
      break;
    }
  }
}

}  // namespace detail

// Candidate centers equidistant from three features (Voronoi vertices).
inline std::vector<Point> triple_candidates(const Feature& f1,
                                            const Feature& f2,
                                            const Feature& f3) {
  std::vector<Point> out;
  detail::triple_candidates_emit(f1, f2, f3,
                                 [&](Point p) { out.push_back(p); });
  return out;
}

inline std::vector<Feature> collect_features(const TrajectorySet& ts) {
  std::vector<Feature> features;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Trajectory& t = ts.trajectories[i];
    for (const Point& w : t.waypoints())
      features.push_back(Feature::endpoint(w, i));
    for (std::size_t j = 0; j < t.segment_count(); ++j)
      features.push_back(Feature::interior(t.segment(j), i));
  }
  return features;
}

// Exact minimum touching ball by candidate enumeration. The optimal center
// lies on a Voronoi vertex (3 equidistant features) or an edge minimum
// (feature pair), so the minimum over this superset of candidates is exact
// up to floating error. Ties break to the lexicographically smallest center.
inline Ball exact_tmtb(const TrajectorySet& ts) {
  if (ts.size() == 1)
    return Ball(ts.trajectories.front().waypoints().front(), 0.0);

  const double dhat = diameter_2approx(ts);
  const double tie_eps = std::max(kAbsTol, 1e-12 * dhat);
  const detail::BBox box = detail::bounding_box(ts, 10.0 * dhat + 1.0);

  Point best_center = ts.trajectories.front().waypoints().front();
  double best_r = touching_radius(best_center, ts);

  // Farthest-point ordering of the trajectories (by first waypoint): the
  // early-exit evaluation then rejects bad candidates after one or two
  // distance computations instead of scanning a cluster of nearby ones.
  std::vector<std::size_t> scan_order(ts.size());
  {
    std::vector<double> sep(ts.size(), 1e300);
    std::vector<bool> used(ts.size(), false);
    std::size_t cur = 0;
    for (std::size_t pick = 0; pick < ts.size(); ++pick) {
      scan_order[pick] = cur;
      used[cur] = true;
      const Point p = ts.trajectories[cur].waypoints().front();
      std::size_t next = cur;
      double far = -1.0;
      for (std::size_t j = 0; j < ts.size(); ++j) {
        if (used[j]) continue;
        sep[j] = std::min(sep[j],
                          dist(p, ts.trajectories[j].waypoints().front()));
        if (sep[j] > far) {
          far = sep[j];
          next = j;
        }
      }
      cur = next;
    }
  }

  auto consider = [&](Point c) {
    if (!box.contains(c)) return;
    const double r =
        touching_radius_capped_ordered(c, ts, best_r + tie_eps, scan_order);
    if (r < best_r - tie_eps) {
      best_r = r;
      best_center = c;
    } else if (r <= best_r + tie_eps && lex_less(c, best_center)) {
      best_r = std::min(best_r, r);
      best_center = c;
    }
  };

  // Waypoints and pairwise segment crossings are radius-0 anchors.
  std::vector<Segment> all_segments;
  for (const auto& t : ts.trajectories) {
    for (const Point& w : t.waypoints()) consider(w);
    for (std::size_t j = 0; j < t.segment_count(); ++j)
      all_segments.push_back(t.segment(j));
  }
  for (std::size_t i = 0; i < all_segments.size(); ++i)
    for (std::size_t j = i + 1; j < all_segments.size(); ++j) {
      const auto ix =
          segment_segment_intersection(all_segments[i], all_segments[j]);
      if (ix.kind == SegIntersection::Kind::Crossing) {
        consider(ix.p);
      } else if (ix.kind == SegIntersection::Kind::Overlap) {
        consider(ix.p);
        consider(ix.q);
        consider(midpoint(ix.p, ix.q));
      }
    }

  const std::vector<Feature> features = collect_features(ts);
  const std::size_t nf = features.size();

  // At the optimum the defining features realize the radius exactly, so a
  // candidate farther than the incumbent from any generating feature cannot
  // be the optimal center; skip the full evaluation.
  auto near_generator = [&](Point c, const Feature& f) {
    const double df = f.kind == Feature::Kind::Endpoint
                          ? dist(c, f.point)
                          : dist_point_segment(c, *f.segment);
    return df <= best_r + tie_eps;
  };

  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = i + 1; j < nf; ++j)
      for (Point c : pair_candidates(features[i], features[j]))
        if (near_generator(c, features[i]) && near_generator(c, features[j]))
          consider(c);

  // Coarse rejection grid: touching_radius is 1-Lipschitz in the center,
  // so a cell whose sampled radius exceeds the incumbent by more than the
  // cell half-diagonal (plus the tie window) cannot contain an improving
  // center. The optimal center lies within best_r of every waypoint's
  // trajectory, hence inside the waypoint box expanded by best_r.
  struct RejectGrid {
    double x0 = 0.0, y0 = 0.0, width = 1.0, slack = 0.0;
    std::size_t nx = 0, ny = 0;
    std::vector<double> radius;  // capped touching radius at cell centers

    bool may_improve(Point c, double bound) const {
      if (nx == 0) return true;
      const double fx = (c.x - x0) / width;
      const double fy = (c.y - y0) / width;
      if (fx < 0.0 || fy < 0.0) return false;
      const std::size_t ix = static_cast<std::size_t>(fx);
      const std::size_t iy = static_cast<std::size_t>(fy);
      if (ix >= nx || iy >= ny) return false;
      return radius[iy * nx + ix] - slack <= bound;
    }
  } grid;
  {
    detail::BBox tight{1e300, 1e300, -1e300, -1e300};
    for (const auto& t : ts.trajectories)
      for (const Point& w : t.waypoints()) {
        tight.xmin = std::min(tight.xmin, w.x);
        tight.ymin = std::min(tight.ymin, w.y);
        tight.xmax = std::max(tight.xmax, w.x);
        tight.ymax = std::max(tight.ymax, w.y);
      }
    const double margin = best_r + 2.0 * tie_eps;
    grid.x0 = tight.xmin - margin;
    grid.y0 = tight.ymin - margin;
    const double sx = tight.xmax + margin - grid.x0;
    const double sy = tight.ymax + margin - grid.y0;
    const double target_cells =
        std::clamp(64.0 * static_cast<double>(nf), 4096.0, 500000.0);
    grid.width = std::max(std::sqrt(std::max(sx * sy, 1e-12) / target_cells),
                          1e-9);
    grid.nx = static_cast<std::size_t>(sx / grid.width) + 1;
    grid.ny = static_cast<std::size_t>(sy / grid.width) + 1;
    grid.slack = grid.width * std::sqrt(0.5) * (1.0 + 1e-9) + 2.0 * tie_eps;
    grid.radius.resize(grid.nx * grid.ny);
    const double build_cap = best_r + grid.slack + tie_eps;
    for (std::size_t iy = 0; iy < grid.ny; ++iy)
      for (std::size_t ix = 0; ix < grid.nx; ++ix) {
        const Point cc{grid.x0 + (ix + 0.5) * grid.width,
                       grid.y0 + (iy + 0.5) * grid.width};
        grid.radius[iy * grid.nx + ix] =
            touching_radius_capped_ordered(cc, ts, build_cap, scan_order);
      }
  }

  // Triples: any center equidistant at radius r from three features forces
  // every pairwise feature distance <= 2r, so pairs farther than 2*best
  // cannot generate an improving candidate.
  std::vector<std::size_t> near;
  for (std::size_t i = 0; i < nf; ++i) {
    const double cap = 2.0 * (best_r + tie_eps) * (1.0 + 1e-9);
    near.clear();
    for (std::size_t j = i + 1; j < nf; ++j)
      if (detail::feature_distance(features[i], features[j]) <= cap)
        near.push_back(j);
    for (std::size_t a = 0; a < near.size(); ++a)
      for (std::size_t b = a + 1; b < near.size(); ++b) {
        if (detail::feature_distance(features[near[a]], features[near[b]]) >
            cap)
          continue;
        detail::triple_candidates_emit(
            features[i], features[near[a]], features[near[b]], [&](Point c) {
              if (grid.may_improve(c, best_r + tie_eps) &&
                  near_generator(c, features[i]) &&
                  near_generator(c, features[near[a]]) &&
                  near_generator(c, features[near[b]]))
                consider(c);
            });
      }
  }

  return Ball(best_center, touching_radius(best_center, ts));
}

struct EssentialityEntry {
  std::size_t index = 0;
  double full_radius = 0.0;
  Ball leave_one_out;
  bool essential = false;
};

// Leave-one-out probe: a trajectory is essential iff removing it strictly
// shrinks the minimum touching ball.
inline std::vector<EssentialityEntry> essentiality_check(
    const TrajectorySet& ts) {
  if (ts.size() < 2)
    throw std::invalid_argument("essentiality_check: needs n >= 2");
  const Ball full = exact_tmtb(ts);
  const double tol = std::max(kAbsTol, kRelTol * full.radius);

  std::vector<EssentialityEntry> out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::vector<Trajectory> rest;
    rest.reserve(ts.size() - 1);
    for (std::size_t j = 0; j < ts.size(); ++j)
      if (j != i) rest.push_back(ts.trajectories[j]);
    const Ball loo = exact_tmtb(TrajectorySet(std::move(rest)));
    out.push_back({i, full.radius, loo, loo.radius < full.radius - tol});
  }
  return out;
}

}  // namespace tmtb
