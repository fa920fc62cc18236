#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "tmtb/exact.hpp"
#include "tmtb/grid_oracle.hpp"
#include "tmtb/instance_gen.hpp"

using namespace tmtb;

TEST_CASE("pair_candidates examples") {
  {
    const auto c = pair_candidates(Feature::endpoint({0, 0}, 0),
                                   Feature::endpoint({0, 2}, 1));
    REQUIRE(c.size() == 1);
    CHECK(c[0].x == Catch::Approx(0.0).margin(1e-15));
    CHECK(c[0].y == Catch::Approx(1.0));
  }
  {
    const auto c = pair_candidates(
        Feature::endpoint({0, 2}, 0),
        Feature::interior(Segment({-1, 0}, {1, 0}), 1));
    REQUIRE(c.size() == 1);
    CHECK(c[0].x == Catch::Approx(0.0).margin(1e-15));
    CHECK(c[0].y == Catch::Approx(1.0));
  }
  {
    // Projection outside the segment: no candidate.
    const auto c = pair_candidates(
        Feature::endpoint({5, 2}, 0),
        Feature::interior(Segment({-1, 0}, {1, 0}), 1));
    CHECK(c.empty());
  }
  {
    const auto c = pair_candidates(
        Feature::interior(Segment({0, 0}, {2, 2}), 0),
        Feature::interior(Segment({0, 2}, {2, 0}), 1));
    REQUIRE(c.size() == 1);
    CHECK(c[0].x == Catch::Approx(1.0));
    CHECK(c[0].y == Catch::Approx(1.0));
  }
  {
    // Parallel interiors: one representative on the midline.
    const auto c = pair_candidates(
        Feature::interior(Segment({0, 0}, {1, 0}), 0),
        Feature::interior(Segment({0, 2}, {1, 2}), 1));
    REQUIRE(c.size() == 1);
    CHECK(c[0].y == Catch::Approx(1.0));
  }
}

TEST_CASE("triple_candidates examples") {
  {
    const auto c = triple_candidates(
        Feature::endpoint({0, 0}, 0), Feature::endpoint({2, 0}, 1),
        Feature::endpoint({1, std::sqrt(3.0)}, 2));
    REQUIRE(c.size() == 1);
    CHECK(c[0].x == Catch::Approx(1.0));
    CHECK(c[0].y == Catch::Approx(std::sqrt(3.0) / 3.0));
    // Equidistance.
    const double r = dist(c[0], {0, 0});
    CHECK(dist(c[0], {2, 0}) == Catch::Approx(r));
    CHECK(dist(c[0], {1, std::sqrt(3.0)}) == Catch::Approx(r));
  }
  {
    // Bisector x=1 meets the parabola of ((0,0), line y=2) at (1, 3/4).
    const auto c = triple_candidates(
        Feature::endpoint({0, 0}, 0), Feature::endpoint({2, 0}, 1),
        Feature::interior(Segment({-5, 2}, {5, 2}), 2));
    bool found = false;
    for (const Point& p : c) {
      if (std::fabs(p.x - 1.0) < 1e-9 && std::fabs(p.y - 0.75) < 1e-9)
        found = true;
      // All roots are genuinely equidistant from the two points and the line.
      const double r1 = dist(p, {0, 0});
      const double r2 = dist(p, {2, 0});
      const double r3 = std::fabs(p.y - 2.0);
      CHECK(r1 == Catch::Approx(r2).margin(1e-9));
      CHECK(r1 == Catch::Approx(r3).margin(1e-9));
    }
    CHECK(found);
  }
  {
    const auto c = triple_candidates(Feature::endpoint({0, 0}, 0),
                                     Feature::endpoint({1, 0}, 1),
                                     Feature::endpoint({2, 0}, 2));
    CHECK(c.empty());
  }
}

TEST_CASE("exact_tmtb small instances") {
  {
    const TrajectorySet ts({Trajectory({{0, 0}, {1, 0}}),
                            Trajectory({{0, 2}, {1, 2}})});
    const Ball b = exact_tmtb(ts);
    CHECK(b.radius == Catch::Approx(1.0));
  }
  {
    // All trajectories share a common point.
    const TrajectorySet ts({Trajectory({{0, 0}, {2, 2}}),
                            Trajectory({{0, 2}, {2, 0}}),
                            Trajectory({{1, 0}, {1, 5}})});
    const Ball b = exact_tmtb(ts);
    CHECK(b.radius <= 1e-9);
  }
  {
    // Single trajectory: radius 0 at first waypoint.
    const Ball b = exact_tmtb(TrajectorySet({Trajectory({{3, 4}, {5, 6}})}));
    CHECK(b.radius == 0.0);
    CHECK(b.center.x == 3.0);
    CHECK(b.center.y == 4.0);
  }
  {
    // Three points at unit-triangle corners: minimum enclosing circle.
    const TrajectorySet ts({Trajectory({{0, 0}}), Trajectory({{2, 0}}),
                            Trajectory({{1, std::sqrt(3.0)}})});
    const Ball b = exact_tmtb(ts);
    CHECK(b.radius == Catch::Approx(2.0 / std::sqrt(3.0)));
  }
}

TEST_CASE("exact_tmtb validity and oracle agreement on random instances") {
  std::mt19937_64 seeds(31);
  for (int t = 0; t < 25; ++t) {
    std::mt19937_64 rng(seeds());
    const int n = 2 + static_cast<int>(rng() % 5);
    const TrajectorySet ts = random_trajectory_set(rng(), n, 1, 4);
    const Ball b = exact_tmtb(ts);
    // Validity: the reported radius is the actual touching radius.
    CHECK(touching_radius(b.center, ts) ==
          Catch::Approx(b.radius).margin(1e-12));
    // Independent grid oracle.
    const double w = 0.02;
    const Ball g = grid_tmtb(ts, w);
    CHECK(b.radius <= g.radius + 1e-9);
    CHECK(g.radius <= b.radius + w * std::sqrt(2.0) / 2.0 + 1e-9);
  }
}

TEST_CASE("exact_tmtb monotone under nesting") {
  std::mt19937_64 seeds(37);
  for (int t = 0; t < 20; ++t) {
    std::mt19937_64 rng(seeds());
    const TrajectorySet full = random_trajectory_set(rng(), 5, 1, 3);
    std::vector<Trajectory> sub(full.trajectories.begin(),
                                full.trajectories.begin() + 2 + rng() % 3);
    const double r_sub = exact_tmtb(TrajectorySet(sub)).radius;
    const double r_full = exact_tmtb(full).radius;
    CHECK(r_sub <= r_full + 1e-9);
  }
}

TEST_CASE("exact_tmtb radius is rigid-motion invariant") {
  std::mt19937_64 seeds(41);
  for (int t = 0; t < 10; ++t) {
    std::mt19937_64 rng(seeds());
    const TrajectorySet ts = random_trajectory_set(rng(), 4, 1, 3);
    std::uniform_real_distribution<double> ang(0.0, 6.28);
    std::uniform_real_distribution<double> shift(-5.0, 5.0);
    const double a = ang(rng);
    const double dx = shift(rng), dy = shift(rng);
    auto move = [&](Point p) {
      return Point{std::cos(a) * p.x - std::sin(a) * p.y + dx,
                   std::sin(a) * p.x + std::cos(a) * p.y + dy};
    };
    std::vector<Trajectory> moved;
    for (const auto& traj : ts.trajectories) {
      std::vector<Point> pts;
      for (const Point& w : traj.waypoints()) pts.push_back(move(w));
      moved.push_back(Trajectory(std::move(pts)));
    }
    const double r1 = exact_tmtb(ts).radius;
    const double r2 = exact_tmtb(TrajectorySet(std::move(moved))).radius;
    CHECK(r2 == Catch::Approx(r1).epsilon(1e-9).margin(1e-9));
  }
}

TEST_CASE("essentiality_check") {
  {
    // A duplicated trajectory is never essential.
    const Trajectory a({{0, 0}, {1, 0}});
    const Trajectory b({{5, 5}, {6, 5}});
    const TrajectorySet ts({a, b, a});
    const auto report = essentiality_check(ts);
    CHECK_FALSE(report[0].essential);
    CHECK_FALSE(report[2].essential);
    CHECK(report[1].essential);
  }
  {
    // Three points whose enclosing circle is crossed by a long spanning
    // segment: the segment is touched for free, hence non-essential.
    const TrajectorySet ts({Trajectory({{0, 0}}), Trajectory({{2, 0}}),
                            Trajectory({{1, 2}}),
                            Trajectory({{-10, 0.5}, {10, 0.5}})});
    const auto report = essentiality_check(ts);
    CHECK_FALSE(report[3].essential);
  }
  CHECK_THROWS_AS(essentiality_check(TrajectorySet({Trajectory({{0, 0}})})),
                  std::invalid_argument);
}
