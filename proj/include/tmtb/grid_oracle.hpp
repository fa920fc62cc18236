#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "tmtb/exact.hpp"
#include "tmtb/geometry.hpp"

namespace tmtb {

struct GridSpec {
  double width = 0.0;
  detail::BBox bounds{0, 0, 0, 0};
};

// Brute-force baseline: evaluate the touching radius on a uniform grid over
// the bounding box expanded by a radius upper bound, so the optimal center
// is always inside the scanned region. Guarantee:
//   r_grid <= r_exact + width * sqrt(2)/2
// since touching_radius is 1-Lipschitz and some grid point lies within half
// a cell diagonal of the true center.
inline Ball grid_tmtb(const TrajectorySet& ts, double width) {
  if (!(width > 0.0))
    throw std::invalid_argument("grid_tmtb: width must be > 0");

  // Upper bound on the optimal radius: the ball at the anchor waypoint
  // touches everything. Never exceeds the 2-approximate diameter.
  const Point anchor = ts.trajectories.front().waypoints().front();
  const double r_upper = touching_radius(anchor, ts);

  detail::BBox box = detail::bounding_box(ts, r_upper);
  if (box.xmax - box.xmin < kPointTol && box.ymax - box.ymin < kPointTol)
    return Ball(Point{box.xmin, box.ymin}, touching_radius({box.xmin, box.ymin}, ts));

  const std::uint64_t nx =
      static_cast<std::uint64_t>(std::floor((box.xmax - box.xmin) / width)) + 1;
  const std::uint64_t ny =
      static_cast<std::uint64_t>(std::floor((box.ymax - box.ymin) / width)) + 1;
  if (nx * ny > 100000000ull)
    throw std::runtime_error("grid_tmtb: grid too large (> 1e8 points)");

  Point best_center = anchor;
  double best_r = r_upper;
  const double tie_eps = std::max(kAbsTol, 1e-12 * std::max(1.0, r_upper));

  // Row-major scan. Along a row, touching_radius can drop by at most
  // `width` per step (1-Lipschitz), so after seeing radius r we may skip
  // the next floor((r - best)/width) - 1 cells: all have radius > best.
  for (std::uint64_t iy = 0; iy < ny; ++iy) {
    const double y = box.ymin + static_cast<double>(iy) * width;
    for (std::uint64_t ix = 0; ix < nx; ++ix) {
      const Point c{box.xmin + static_cast<double>(ix) * width, y};
      const double r = touching_radius_capped(c, ts, best_r + tie_eps);
      if (r < best_r - tie_eps) {
        best_r = r;
        best_center = c;
      } else if (r <= best_r + tie_eps && lex_less(c, best_center)) {
        best_r = std::min(best_r, r);
        best_center = c;
      } else if (r > best_r + tie_eps) {
        const double skip = std::floor((r - best_r - tie_eps) / width) - 1.0;
        if (skip > 0.0) ix += static_cast<std::uint64_t>(skip);
      }
    }
  }

  return Ball(best_center, touching_radius(best_center, ts));
}

}  // namespace tmtb
