#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tmtb/geometry.hpp"

namespace tmtb {

// Seeded random polyline instances on a square, used by the benchmark
// harness and the verification suites.
inline Trajectory random_trajectory(std::mt19937_64& rng, int k,
                                    double lo = 0.0, double hi = 10.0) {
  std::uniform_real_distribution<double> coord(lo, hi);
  std::vector<Point> pts;
  pts.reserve(k + 1);
  while (static_cast<int>(pts.size()) < k + 1) {
    const Point p{coord(rng), coord(rng)};
    if (pts.empty() || !points_coincide(pts.back(), p)) pts.push_back(p);
  }
  return Trajectory(std::move(pts));
}

inline TrajectorySet random_trajectory_set(std::uint64_t seed, int n, int kmin,
                                           int kmax, double lo = 0.0,
                                           double hi = 10.0) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kdist(kmin, kmax);
  std::vector<Trajectory> ts;
  ts.reserve(n);
  for (int i = 0; i < n; ++i)
    ts.push_back(random_trajectory(rng, kdist(rng), lo, hi));
  return TrajectorySet(std::move(ts));
}

}  // namespace tmtb
