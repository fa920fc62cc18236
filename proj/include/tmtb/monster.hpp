#pragma once

#include <stdexcept>
#include <vector>

#include "tmtb/exact.hpp"
#include "tmtb/geometry.hpp"

namespace tmtb {

// Configuration with unbounded combinatorial dimension: a slanted base, a
// descending stabilizer, and n-2 nested arches. Every trajectory is
// essential to the minimum touching ball.
inline TrajectorySet lp_monster(int n) {
  if (n <= 4) throw std::invalid_argument("lp_monster: needs n > 4");
  const double right = n + 2.5;

  std::vector<Trajectory> ts;
  ts.reserve(n);
  // Base: slanted segment anchoring the ball from below.
  ts.push_back(Trajectory({Point{0.0, 0.0}, Point{right, -0.5}}));
  // Stabilizer: starts high, descends, runs right at height 1.
  ts.push_back(Trajectory(
      {Point{0.0, 4.0}, Point{3.5, 1.0}, Point{right, 1.0}}));
  // Arches: rise to height 4 at x = i + 1.25, return to height 1.
  for (int i = 2; i <= n - 1; ++i) {
    const double x = static_cast<double>(i);
    ts.push_back(Trajectory({Point{0.0, 1.0}, Point{x, 1.0},
                             Point{x + 1.25, 4.0}, Point{x + 2.5, 1.0},
                             Point{right, 1.0}}));
  }
  return TrajectorySet(std::move(ts));
}

struct MonsterReport {
  int n = 0;
  double full_radius = 0.0;
  Ball full_ball;
  std::vector<EssentialityEntry> removals;
  bool all_essential = false;
};

inline MonsterReport monster_removals(int n) {
  const TrajectorySet ts = lp_monster(n);
  const Ball full = exact_tmtb(ts);
  MonsterReport report;
  report.n = n;
  report.full_ball = full;
  report.full_radius = full.radius;
  report.removals = essentiality_check(ts);
  report.all_essential = true;
  for (const auto& e : report.removals)
    report.all_essential = report.all_essential && e.essential;
  return report;
}

}  // namespace tmtb
