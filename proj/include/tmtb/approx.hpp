#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tmtb/geometry.hpp"

namespace tmtb {

struct ParamInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct FeasibleSet {
  std::vector<ParamInterval> intervals;  // disjoint, sorted by lo

  bool empty() const { return intervals.empty(); }
  bool contains(double lambda) const {
    for (const auto& iv : intervals)
      if (lambda >= iv.lo && lambda <= iv.hi) return true;
    return false;
  }
  ParamInterval widest() const {
    ParamInterval best = intervals.front();
    for (const auto& iv : intervals)
      if (iv.hi - iv.lo > best.hi - best.lo) best = iv;
    return best;
  }
};

struct ApproxParams {
  double eps = 0.25;
  double rho = 1e-6;
  double gamma = 2.0;
  double tau0 = 0.0;
};

namespace detail {

// Root of g(lambda) = tau on [a, b] where g is convex, g(a) > tau >= g(b)
// or vice versa. Plain bisection; 80 halvings reach machine precision.
template <class G>
double bisect_level(G&& g, double tau, double a, double b) {
  double fa = g(a) - tau;
  for (int it = 0; it < 80; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = g(m) - tau;
    if ((fa > 0.0) == (fm > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Sublevel interval of a convex distance profile along `ell`, given the
// minimizing parameter. Empty if the minimum exceeds tau.
template <class G>
std::optional<ParamInterval> convex_sublevel(G&& g, double tau,
                                             double lambda_min) {
  if (g(lambda_min) > tau) return std::nullopt;
  double lo = 0.0;
  if (g(0.0) > tau) lo = bisect_level(g, tau, 0.0, lambda_min);
  double hi = 1.0;
  if (g(1.0) > tau) hi = bisect_level(g, tau, lambda_min, 1.0);
  return ParamInterval{lo, hi};
}

inline void merge_intervals(std::vector<ParamInterval>& ivs) {
  if (ivs.size() < 2) return;
  std::sort(ivs.begin(), ivs.end(),
            [](const ParamInterval& a, const ParamInterval& b) {
              return a.lo < b.lo;
            });
  std::vector<ParamInterval> out;
  out.push_back(ivs.front());
  for (std::size_t i = 1; i < ivs.size(); ++i) {
    if (ivs[i].lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, ivs[i].hi);
    else
      out.push_back(ivs[i]);
  }
  ivs = std::move(out);
}

}  // namespace detail

// Parameters lambda on `ell` whose point is within tau of trajectory t:
// one closed interval per segment of t (the tau-sausage of a segment is
// convex, so its line section is a single interval), merged and disjoint.
inline std::vector<ParamInterval> interval_within(const Segment& ell,
                                                  const Trajectory& t,
                                                  double tau) {
  if (tau < 0.0) throw std::invalid_argument("interval_within: tau < 0");
  std::vector<ParamInterval> out;

  if (t.segment_count() == 0) {
    const Point p = t.waypoints().front();
    auto g = [&](double lam) { return dist(ell.at(lam), p); };
    const double lmin = closest_point_segment(p, ell).lambda;
    if (auto iv = detail::convex_sublevel(g, tau, lmin)) out.push_back(*iv);
    return out;
  }

  for (std::size_t j = 0; j < t.segment_count(); ++j) {
    const Segment s = t.segment(j);
    auto g = [&](double lam) { return dist_point_segment(ell.at(lam), s); };
    const double lmin = closest_segment_segment(ell, s).lambda1;
    if (auto iv = detail::convex_sublevel(g, tau, lmin)) out.push_back(*iv);
  }
  detail::merge_intervals(out);
  return out;
}

// Intersection over trajectories of their interval unions, by an endpoint
// sweep: a lambda is feasible when every trajectory has at least one
// active interval there.
inline FeasibleSet feasible_intersection(
    const std::vector<std::vector<ParamInterval>>& per_trajectory) {
  FeasibleSet result;
  const std::size_t m = per_trajectory.size();
  if (m == 0) {
    result.intervals.push_back({0.0, 1.0});
    return result;
  }
  for (const auto& list : per_trajectory)
    if (list.empty()) return result;

  struct Event {
    double lambda;
    int delta;  // +1 open, -1 close
    std::size_t traj;
  };
  std::vector<Event> events;
  std::vector<std::vector<ParamInterval>> merged = per_trajectory;
  for (std::size_t i = 0; i < m; ++i) {
    detail::merge_intervals(merged[i]);
    for (const auto& iv : merged[i]) {
      events.push_back({iv.lo, +1, i});
      events.push_back({iv.hi, -1, i});
    }
  }
  // Opens before closes at equal lambda, so touching intervals across
  // trajectories yield a (degenerate) closed intersection point.
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.delta > b.delta;
  });

  std::vector<int> active(m, 0);
  std::size_t covered = 0;
  std::optional<double> open_at;
  for (const Event& e : events) {
    if (e.delta > 0) {
      if (active[e.traj]++ == 0 && ++covered == m) open_at = e.lambda;
    } else {
      if (--active[e.traj] == 0) {
        if (covered-- == m && open_at) {
          result.intervals.push_back({*open_at, e.lambda});
          open_at.reset();
        }
      }
    }
  }
  detail::merge_intervals(result.intervals);
  return result;
}

struct RadEstimate {
  Ball ball;
  double tau_final = 0.0;
};

// Geometric-decreasing feasibility search over the source segments.
// Shrinks tau by gamma while some lambda on the current segment stays
// within tau of every constraining trajectory; tau carries over across
// segments. The witness center is the midpoint of the widest feasible
// interval at the last non-empty level, and the returned radius is its
// (tighter) actual touching radius, never above gamma * tau_final.
inline RadEstimate estimate_rad(const TrajectorySet& ts,
                                std::span<const Segment> source_segments,
                                double gamma, double rho, double tau0,
                                std::optional<std::size_t> exclude_index =
                                    std::nullopt) {
  if (!(gamma > 1.0)) throw std::invalid_argument("estimate_rad: gamma <= 1");
  if (!(tau0 > 0.0)) throw std::invalid_argument("estimate_rad: tau0 <= 0");
  if (rho < 0.0) throw std::invalid_argument("estimate_rad: rho < 0");
  if (source_segments.empty())
    throw std::invalid_argument("estimate_rad: no source segments");

  // Hard relative floor keeps the loop finite when rho = 0 and the
  // restricted optimum is 0.
  const double floor_tau = std::max(rho, tau0 * 1e-15);

  double tau = tau0;
  std::optional<Point> witness;

  for (const Segment& ell : source_segments) {
    while (tau > floor_tau) {
      std::vector<std::vector<ParamInterval>> lists;
      lists.reserve(ts.size());
      bool some_empty = false;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        if (exclude_index && *exclude_index == i) continue;
        lists.push_back(interval_within(ell, ts.trajectories[i], tau));
        if (lists.back().empty()) {
          some_empty = true;
          break;
        }
      }
      if (some_empty) break;
      const FeasibleSet f = feasible_intersection(lists);
      if (f.empty()) break;
      const ParamInterval w = f.widest();
      witness = ell.at(0.5 * (w.lo + w.hi));
      tau /= gamma;
    }
  }

  if (!witness) {
    // No source point was within tau0 of every constraint; fall back to
    // the first source midpoint as a (loose) valid ball.
    witness = midpoint(source_segments[0].a, source_segments[0].b);
  }
  return {Ball(*witness, touching_radius(*witness, ts)), tau};
}

struct GhostSet {
  std::vector<Trajectory> trajectories;
  double tau = 0.0;
  double eps = 0.0;
};

inline bool sausage_contains(const Trajectory& t, double tau, Point x) {
  if (tau < 0.0) throw std::invalid_argument("sausage_contains: tau < 0");
  return dist_point_trajectory(x, t) <= tau;
}

namespace detail {

// Sampled circular arc of radius |radius_vec| around `center`, from angle
// of `from` to angle of `to` (both relative to center), sweeping the short
// way through the direction `through`. Sagitta stays below arc_tol.
inline void append_arc(std::vector<Point>& out, Point center, Point from,
                       Point to, Point through, double arc_tol) {
  const double r = norm(from);
  if (r < kPointTol) return;
  auto sweep = [&](Point a, Point b) {
    const double delta = std::atan2(cross(a, b), dot(a, b));
    const double ca = std::atan2(a.y, a.x);
    // Chord step keeping the sagitta r*(1 - cos(step/2)) below arc_tol.
    const double step =
        2.0 * std::acos(std::clamp(1.0 - arc_tol / r, -1.0, 1.0));
    const int n = std::max(1, static_cast<int>(
                                  std::ceil(std::fabs(delta) /
                                            std::max(step, 1e-3))));
    for (int i = 1; i < n; ++i) {
      const double a_i = ca + delta * i / n;
      out.push_back(center + r * Point{std::cos(a_i), std::sin(a_i)});
    }
  };
  if (norm(through) > kPointTol &&
      std::fabs(cross(from, to)) < 1e-9 * r * r && dot(from, to) < 0.0) {
    // Antipodal feet (u-turn): route through the cap direction explicitly.
    const Point mid = (r / norm(through)) * through;
    sweep(from, mid);
    out.push_back(center + mid);
    sweep(mid, to);
  } else {
    sweep(from, to);
  }
}

// One offset polyline at signed distance d from the source, miter joins on
// the angular bisector, end segments extended by tau. A miter longer than
// 4*tau falls back to a sampled arc around the source vertex (a flat bevel
// would leave uncovered pockets near the bisector at sharp bends).
// Segments consumed by inward joins are dropped.
inline std::optional<Trajectory> offset_polyline(const Trajectory& t,
                                                 double d, double tau,
                                                 double arc_tol) {
  struct Piece {
    Point origin;  // segment start shifted by the offset
    Point u;       // unit direction (same as source segment)
    double t_start;
    double t_end;
    std::size_t src;             // index of the source segment
    std::vector<Point> lead_in;  // join points emitted before this piece
  };

  const auto segs = t.segments();
  std::vector<Piece> pieces;
  pieces.reserve(segs.size());
  for (std::size_t j = 0; j < segs.size(); ++j) {
    const Point n = segs[j].normal();
    Piece p{segs[j].a + d * n, segs[j].direction(), 0.0, segs[j].length(),
            j,  {}};
    if (j == 0) p.t_start = -tau;
    if (j + 1 == segs.size()) p.t_end += tau;
    pieces.push_back(p);
  }

  std::vector<Piece> chain;
  chain.push_back(pieces.front());
  std::vector<Point> carry;  // join points orphaned by a skipped piece
  for (std::size_t j = 1; j < pieces.size(); ++j) {
    Piece q = pieces[j];
    q.lead_in = std::move(carry);
    carry.clear();
    const Point vertex = segs[j].a;  // shared source vertex of the join
    // Feet of the nominal join, both at radius |d| around the vertex.
    const Point foot_p = vertex + d * segs[j - 1].normal();
    const Point foot_q = vertex + d * segs[j].normal();
    auto arc_join = [&] {
      append_arc(q.lead_in, vertex, foot_p - vertex, foot_q - vertex,
                 pieces[j - 1].u, arc_tol);
    };
    bool accepted = false;
    while (!accepted) {
      Piece& p = chain.back();
      if (p.src + 1 != j) {
        // Earlier pieces between p and q vanished or were consumed; a line
        // intersection of non-adjacent offsets is not an equidistant point,
        // so trimming there would cut coverage. Keep both extents and walk
        // around the join vertex instead.
        arc_join();
        accepted = true;
        break;
      }
      const double denom = cross(p.u, q.u);
      if (std::fabs(denom) < 1e-12) {
        // Collinear continuation (coincident feet) or u-turn (cap arc).
        if (dot(p.u, q.u) < 0.0) arc_join();
        accepted = true;
        break;
      }
      const Point w = q.origin - p.origin;
      const double tp = cross(w, q.u) / denom;
      const double tq = cross(w, p.u) / denom;
      if (tp <= p.t_start) {
        // Piece p fully consumed by the inward join. Keep any join arcs it
        // carried: their coverage does not depend on the straight part.
        if (chain.size() > 1) {
          q.lead_in.insert(q.lead_in.begin(), p.lead_in.begin(),
                           p.lead_in.end());
          chain.pop_back();
          continue;
        }
        accepted = true;
        break;
      }
      if (tq >= q.t_end) {
        // Piece q vanishes entirely; skip it, keeping any join arcs it
        // inherited for the next surviving piece.
        carry = std::move(q.lead_in);
        break;
      }
      const Point m = p.origin + tp * p.u;
      if (dist(m, vertex) > 4.0 * tau) {
        arc_join();
        accepted = true;
        break;
      }
      p.t_end = tp;
      q.t_start = tq;
      accepted = true;
    }
    if (accepted) chain.push_back(q);
  }

  std::vector<Point> waypoints;
  auto push = [&](Point p) {
    if (waypoints.empty() || !points_coincide(waypoints.back(), p))
      waypoints.push_back(p);
  };
  for (std::size_t j = 0; j < chain.size(); ++j) {
    const Piece& p = chain[j];
    for (const Point& lp : p.lead_in) push(lp);
    if (p.t_end <= p.t_start) continue;
    push(p.origin + p.t_start * p.u);
    push(p.origin + p.t_end * p.u);
  }
  for (const Point& lp : carry) push(lp);
  if (waypoints.empty()) return std::nullopt;
  return Trajectory(std::move(waypoints));
}

}  // namespace detail

// Offset copies of T spaced tau*eps/12 apart, covering the tau-sausage as
// a (tau*eps/12)-net of candidate center locations. A single-waypoint
// source gets chords of its disk instead of polyline offsets.
inline GhostSet ghost_trajectories(const Trajectory& t, double tau,
                                   double eps) {
  if (!(tau > 0.0)) throw std::invalid_argument("ghost_trajectories: tau <= 0");
  if (!(eps > 0.0 && eps <= 0.5))
    throw std::invalid_argument("ghost_trajectories: eps must be in (0, 1/2]");

  const double step = tau * eps / 12.0;
  const int max_i = static_cast<int>(std::floor(12.0 / eps + 1e-12));

  GhostSet out;
  out.tau = tau;
  out.eps = eps;

  if (t.segment_count() == 0) {
    const Point c = t.waypoints().front();
    for (int i = -max_i; i <= max_i; ++i) {
      const double y = static_cast<double>(i) * step;
      const double half = std::sqrt(std::max(0.0, tau * tau - y * y));
      if (half <= kPointTol) {
        out.trajectories.push_back(Trajectory({Point{c.x, c.y + y}}));
      } else {
        out.trajectories.push_back(Trajectory(
            {Point{c.x - half, c.y + y}, Point{c.x + half, c.y + y}}));
      }
    }
    return out;
  }

  for (int i = -max_i; i <= max_i; ++i) {
    const double d = static_cast<double>(i) * step;
    if (auto ghost = detail::offset_polyline(t, d, tau, step / 4.0))
      out.trajectories.push_back(std::move(*ghost));
  }
  return out;
}

struct TmtbEstimate {
  Ball ball;
  GhostSet ghosts;
  double tau_sausage = 0.0;
};

// Two-stage (eps, rho)-approximation: a constant-factor radius estimate
// restricted to the first trajectory, then refinement over ghost
// trajectories covering its sausage. Returned radius r satisfies
// r <= (1 + eps) * max(r_exact, rho).
inline TmtbEstimate estimate_tmtb_detailed(const TrajectorySet& ts,
                                           double eps, double rho) {
  if (!(eps > 0.0 && eps <= 0.5))
    throw std::invalid_argument("estimate_tmtb: eps must be in (0, 1/2]");
  if (rho < 0.0) throw std::invalid_argument("estimate_tmtb: rho < 0");

  const Trajectory& source = ts.trajectories.front();
  const double dhat = diameter_2approx(ts);
  if (dhat <= kPointTol) {
    // Everything coincides with the anchor point.
    const Point c = source.waypoints().front();
    return {Ball(c, touching_radius(c, ts)), GhostSet{}, 0.0};
  }

  double tau_sausage = 0.0;
  if (source.segment_count() == 0) {
    // Restricted optimum is the source point itself (beta = 1 still holds).
    tau_sausage = touching_radius(source.waypoints().front(), ts);
  } else {
    const auto segs = source.segments();
    const RadEstimate stage1 =
        estimate_rad(ts, segs, 2.0, rho, 2.0 * dhat, std::size_t{0});
    tau_sausage = 2.0 * stage1.tau_final;
  }
  if (tau_sausage <= 0.0) {
    const Point c = source.waypoints().front();
    return {Ball(c, touching_radius(c, ts)), GhostSet{}, 0.0};
  }

  GhostSet ghosts = ghost_trajectories(source, tau_sausage, eps);
  std::vector<Segment> ghost_segments;
  for (const Trajectory& g : ghosts.trajectories)
    for (std::size_t j = 0; j < g.segment_count(); ++j)
      ghost_segments.push_back(g.segment(j));
  if (ghost_segments.empty()) {
    const Point c = source.waypoints().front();
    return {Ball(c, touching_radius(c, ts)), std::move(ghosts), tau_sausage};
  }

  // Start one gamma level above the sausage radius: the best ghost-
  // restricted center can sit up to eps*tau/12 farther than the sausage
  // level itself.
  const double gamma = 1.0 + eps / 3.0;
  const RadEstimate stage2 = estimate_rad(
      ts, ghost_segments, gamma, rho, tau_sausage * gamma, std::nullopt);
  return {stage2.ball, std::move(ghosts), tau_sausage};
}

inline Ball estimate_tmtb(const TrajectorySet& ts, double eps, double rho) {
  return estimate_tmtb_detailed(ts, eps, rho).ball;
}

}  // namespace tmtb
