#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "tmtb/approx.hpp"
#include "tmtb/exact.hpp"
#include "tmtb/instance_gen.hpp"

using namespace tmtb;

TEST_CASE("interval_within examples") {
  const Segment ell({0, 0}, {10, 0});
  {
    // Closest feature of the target is its endpoint (5,2):
    // (x-5)^2 + 4 <= 9 on the x-axis.
    const auto ivs = interval_within(ell, Trajectory({{5, 2}, {5, 5}}), 3.0);
    REQUIRE(ivs.size() == 1);
    CHECK(ivs[0].lo == Catch::Approx((5.0 - std::sqrt(5.0)) / 10.0).margin(1e-9));
    CHECK(ivs[0].hi == Catch::Approx((5.0 + std::sqrt(5.0)) / 10.0).margin(1e-9));
  }
  {
    const auto ivs = interval_within(ell, Trajectory({{5, 2}, {5, 5}}), 100.0);
    REQUIRE(ivs.size() == 1);
    CHECK(ivs[0].lo == 0.0);
    CHECK(ivs[0].hi == 1.0);
  }
  {
    const auto ivs = interval_within(ell, Trajectory({{5, 2}, {5, 5}}), 1.0);
    CHECK(ivs.empty());
  }
  {
    // Point trajectory target.
    const auto ivs = interval_within(ell, Trajectory({{5, 1}}), 1.0);
    REQUIRE(ivs.size() == 1);
    CHECK(ivs[0].lo == Catch::Approx(0.5).margin(1e-9));
    CHECK(ivs[0].hi == Catch::Approx(0.5).margin(1e-9));
  }
}

TEST_CASE("interval_within matches brute-force membership") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> tau_dist(0.2, 4.0);
  for (int t = 0; t < 40; ++t) {
    const Trajectory src = random_trajectory(rng, 1);
    const Segment ell = src.segment(0);
    const Trajectory target = random_trajectory(rng, 2 + rng() % 3);
    const double tau = tau_dist(rng);
    const auto ivs = interval_within(ell, target, tau);
    for (int i = 0; i <= 500; ++i) {
      const double lam = i / 500.0;
      const bool inside = dist_point_trajectory(ell.at(lam), target) <= tau;
      bool covered = false;
      for (const auto& iv : ivs)
        covered = covered || (lam >= iv.lo - 2e-3 && lam <= iv.hi + 2e-3);
      if (inside) CHECK(covered);
    }
  }
}

TEST_CASE("feasibility is monotone in tau") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> tau_dist(0.2, 4.0);
  for (int t = 0; t < 30; ++t) {
    const Trajectory src = random_trajectory(rng, 1);
    const Segment ell = src.segment(0);
    const Trajectory target = random_trajectory(rng, 1 + rng() % 3);
    double tau1 = tau_dist(rng), tau2 = tau_dist(rng);
    if (tau1 > tau2) std::swap(tau1, tau2);
    const auto small = interval_within(ell, target, tau1);
    const auto big = interval_within(ell, target, tau2);
    for (const auto& iv : small) {
      for (double lam : {iv.lo, 0.5 * (iv.lo + iv.hi), iv.hi}) {
        bool covered = false;
        for (const auto& b : big)
          covered = covered || (lam >= b.lo - 1e-9 && lam <= b.hi + 1e-9);
        CHECK(covered);
      }
    }
  }
}

TEST_CASE("feasible_intersection examples") {
  {
    const auto f = feasible_intersection({{{0.0, 0.6}}, {{0.4, 1.0}}});
    REQUIRE(f.intervals.size() == 1);
    CHECK(f.intervals[0].lo == Catch::Approx(0.4));
    CHECK(f.intervals[0].hi == Catch::Approx(0.6));
  }
  {
    const auto f = feasible_intersection({{{0.0, 0.6}}, {}});
    CHECK(f.empty());
  }
  {
    const auto f = feasible_intersection(
        {{{0.0, 0.3}, {0.5, 1.0}}, {{0.2, 0.7}}});
    REQUIRE(f.intervals.size() == 2);
    CHECK(f.intervals[0].lo == Catch::Approx(0.2));
    CHECK(f.intervals[0].hi == Catch::Approx(0.3));
    CHECK(f.intervals[1].lo == Catch::Approx(0.5));
    CHECK(f.intervals[1].hi == Catch::Approx(0.7));
  }
  {
    // Touching endpoints intersect in a single point.
    const auto f = feasible_intersection({{{0.0, 0.6}}, {{0.6, 1.0}}});
    REQUIRE(f.intervals.size() == 1);
    CHECK(f.intervals[0].lo == Catch::Approx(0.6));
    CHECK(f.intervals[0].hi == Catch::Approx(0.6));
  }
}

TEST_CASE("feasible_intersection matches brute-force lambda grid") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = 2 + rng() % 3;
    std::vector<std::vector<ParamInterval>> lists(m);
    for (auto& list : lists) {
      const std::size_t cnt = 1 + rng() % 3;
      for (std::size_t c = 0; c < cnt; ++c) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        list.push_back({a, b});
      }
    }
    const auto f = feasible_intersection(lists);
    for (int i = 0; i <= 10000; ++i) {
      const double lam = i / 10000.0;
      bool expect = true;
      for (const auto& list : lists) {
        bool in = false;
        for (const auto& iv : list) in = in || (lam >= iv.lo && lam <= iv.hi);
        expect = expect && in;
      }
      const bool got = f.contains(lam);
      if (expect != got) {
        // Disagreement allowed only within 2e-4 of some interval boundary.
        double nearest = 1e300;
        for (const auto& list : lists)
          for (const auto& iv : list)
            nearest = std::min({nearest, std::fabs(lam - iv.lo),
                                std::fabs(lam - iv.hi)});
        CHECK(nearest <= 2e-4);
      }
    }
  }
}

TEST_CASE("estimate_rad argument checking") {
  const TrajectorySet ts({Trajectory({{0, 0}, {1, 0}}),
                          Trajectory({{0, 2}, {1, 2}})});
  const auto segs = ts.trajectories[0].segments();
  CHECK_THROWS_AS(estimate_rad(ts, segs, 1.0, 1e-6, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_rad(ts, segs, 2.0, 1e-6, 0.0), std::invalid_argument);
}

TEST_CASE("estimate_rad on the parallel-segments instance") {
  const TrajectorySet ts({Trajectory({{0, 0}, {1, 0}}),
                          Trajectory({{0, 2}, {1, 2}})});
  const auto segs = ts.trajectories[0].segments();
  const auto est = estimate_rad(ts, segs, 2.0, 1e-6,
                                2.0 * diameter_2approx(ts), std::size_t{0});

  // Restricted optimum by dense 1-D sampling along the source segment.
  double r_restricted = 1e300;
  for (int i = 0; i <= 20000; ++i) {
    const Point c = segs[0].at(i / 20000.0);
    r_restricted = std::min(r_restricted, touching_radius(c, ts));
  }
  CHECK(r_restricted == Catch::Approx(2.0));  // must reach y=2 from y=0

  CHECK(est.ball.radius >= r_restricted - 1e-9);
  CHECK(est.ball.radius <= 2.0 * r_restricted + 1e-9);
  // Sandwich on tau_final.
  CHECK(est.tau_final / 2.0 <= r_restricted + 1e-9);
  CHECK(r_restricted <= 2.0 * est.tau_final + 1e-9);
}

TEST_CASE("estimate_rad sandwich on random instances") {
  std::mt19937_64 seeds(15);
  for (int t = 0; t < 15; ++t) {
    const TrajectorySet ts = random_trajectory_set(seeds(), 4, 1, 3);
    const auto segs = ts.trajectories[0].segments();
    const double gamma = 2.0;
    const auto est = estimate_rad(ts, segs, gamma, 1e-9,
                                  2.0 * diameter_2approx(ts), std::size_t{0});
    double r_restricted = 1e300;
    for (const Segment& s : segs)
      for (int i = 0; i <= 5000; ++i)
        r_restricted =
            std::min(r_restricted, touching_radius(s.at(i / 5000.0), ts));
    if (r_restricted < 1e-6) continue;  // rho floor regime, sandwich not asserted
    CHECK(est.tau_final / gamma <= r_restricted + 1e-6);
    CHECK(r_restricted <= gamma * est.tau_final + 1e-6);
    // Witness validity.
    CHECK(touching_radius(est.ball.center, ts) ==
          Catch::Approx(est.ball.radius).margin(1e-12));
    CHECK(est.ball.radius <= gamma * est.tau_final + 1e-9);
  }
}

TEST_CASE("estimate_rad concurrent trajectories hit the rho floor") {
  // Everything passes through (1,1).
  const TrajectorySet ts({Trajectory({{0, 0}, {2, 2}}),
                          Trajectory({{0, 2}, {2, 0}}),
                          Trajectory({{1, -1}, {1, 3}})});
  const auto segs = ts.trajectories[0].segments();
  const double rho = 1e-6;
  const auto est = estimate_rad(ts, segs, 2.0, rho,
                                2.0 * diameter_2approx(ts), std::size_t{0});
  CHECK(est.ball.radius <= 2.0 * rho);
}

TEST_CASE("ghost_trajectories of a single horizontal segment") {
  const Trajectory t({{0, 0}, {10, 0}});
  const auto ghosts = ghost_trajectories(t, 1.0, 0.5);
  CHECK(ghosts.trajectories.size() == 49);  // 2*24 + 1
  const double step = 1.0 * 0.5 / 12.0;
  for (const auto& g : ghosts.trajectories) {
    REQUIRE(g.waypoints().size() == 2);
    const double y = g.waypoints()[0].y;
    // Height is an integer multiple of the step, within |tau|.
    const double ratio = y / step;
    CHECK(std::fabs(ratio - std::round(ratio)) < 1e-9);
    CHECK(std::fabs(y) <= 1.0 + 1e-12);
    // Extended by tau at both ends.
    const double x0 = std::min(g.waypoints()[0].x, g.waypoints()[1].x);
    const double x1 = std::max(g.waypoints()[0].x, g.waypoints()[1].x);
    CHECK(x0 == Catch::Approx(-1.0));
    CHECK(x1 == Catch::Approx(11.0));
  }
}

TEST_CASE("ghost i=0 contains the source and a right-angle join sits on the bisector") {
  const Trajectory t({{0, 0}, {4, 0}, {4, 4}});
  const double tau = 1.0, eps = 0.5;
  const auto ghosts = ghost_trajectories(t, tau, eps);
  const double step = tau * eps / 12.0;

  // The i=0 ghost passes through every source point.
  bool found_zero = false;
  for (const auto& g : ghosts.trajectories) {
    bool covers = true;
    for (int i = 0; i <= 100; ++i) {
      Point p = i <= 50 ? t.segment(0).at(i / 50.0) : t.segment(1).at((i - 50) / 50.0);
      covers = covers && dist_point_trajectory(p, g) < 1e-9;
    }
    found_zero = found_zero || covers;
  }
  CHECK(found_zero);

  // Inner offset at one step: join point on the 45-degree bisector of the
  // corner at (4,0), i.e. at (4 - step, step) for the offset toward the
  // inside of the bend.
  bool found_join = false;
  for (const auto& g : ghosts.trajectories)
    for (const Point& w : g.waypoints())
      if (std::fabs(w.x - (4.0 - step)) < 1e-9 && std::fabs(w.y - step) < 1e-9)
        found_join = true;
  CHECK(found_join);
}

TEST_CASE("ghosts stay near the source and bound count") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> tau_dist(0.3, 2.0);
  std::uniform_real_distribution<double> eps_dist(0.1, 0.5);
  for (int t = 0; t < 20; ++t) {
    const Trajectory src = random_trajectory(rng, 1 + rng() % 4);
    const double tau = tau_dist(rng);
    const double eps = eps_dist(rng);
    const auto ghosts = ghost_trajectories(src, tau, eps);
    CHECK(ghosts.trajectories.size() <=
          2 * static_cast<std::size_t>(std::ceil(12.0 / eps)) + 1);
    // Waypoints stay within 4*tau of the source: offset feet and arc join
    // points are at most tau out, end extensions at most sqrt(2)*tau, and
    // accepted miter tips are capped at 4*tau from their vertex.
    for (const auto& g : ghosts.trajectories)
      for (std::size_t j = 0; j < g.waypoints().size(); ++j) {
        const Point w = g.waypoints()[j];
        CHECK(sausage_contains(src, 4.0 * tau * (1.0 + 1e-9) + 1e-9, w));
      }
  }
}

TEST_CASE("ghosts form a net of the sausage") {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> tau_dist(0.3, 2.0);
  std::uniform_real_distribution<double> eps_dist(0.15, 0.5);
  for (int t = 0; t < 5; ++t) {
    const Trajectory src = random_trajectory(rng, 1 + rng() % 4);
    const double tau = tau_dist(rng);
    const double eps = eps_dist(rng);
    const auto ghosts = ghost_trajectories(src, tau, eps);
    const double net = tau * eps / 12.0;

    // Rejection-sample sausage points from the expanded bounding box.
    double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
    for (const Point& w : src.waypoints()) {
      xmin = std::min(xmin, w.x - tau);
      ymin = std::min(ymin, w.y - tau);
      xmax = std::max(xmax, w.x + tau);
      ymax = std::max(ymax, w.y + tau);
    }
    std::uniform_real_distribution<double> ux(xmin, xmax), uy(ymin, ymax);
    int accepted = 0;
    while (accepted < 300) {
      const Point x{ux(rng), uy(rng)};
      if (!sausage_contains(src, tau, x)) continue;
      ++accepted;
      double best = 1e300;
      for (const auto& g : ghosts.trajectories)
        best = std::min(best, dist_point_trajectory(x, g));
      CHECK(best <= net + 1e-9);
    }
  }
}

TEST_CASE("sausage_contains examples") {
  const Trajectory t({{0, 0}, {10, 0}});
  CHECK(sausage_contains(t, 0.0, {5, 0}));
  CHECK_FALSE(sausage_contains(t, 1.0, {5, 2.0000001}));
  CHECK(sausage_contains(t, 1.0, {5, 1}));
}

TEST_CASE("estimate_tmtb argument checking and trivial cases") {
  const TrajectorySet ts({Trajectory({{0, 0}, {1, 0}}),
                          Trajectory({{0, 2}, {1, 2}})});
  CHECK_THROWS_AS(estimate_tmtb(ts, 0.0, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(estimate_tmtb(ts, 0.7, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(estimate_tmtb(ts, 0.25, -1.0), std::invalid_argument);

  // All concurrent: radius collapses to the rho floor.
  const TrajectorySet conc({Trajectory({{0, 0}, {2, 2}}),
                            Trajectory({{0, 2}, {2, 0}})});
  const Ball b = estimate_tmtb(conc, 0.25, 1e-6);
  CHECK(b.radius <= 1.25 * 1e-6);
}

TEST_CASE("estimate_tmtb approximation guarantee on random instances") {
  std::mt19937_64 seeds(33);
  for (int t = 0; t < 15; ++t) {
    std::mt19937_64 rng(seeds());
    const int n = 3 + static_cast<int>(rng() % 4);
    const TrajectorySet ts = random_trajectory_set(rng(), n, 2, 4);
    const double r_exact = exact_tmtb(ts).radius;
    for (double eps : {0.5, 0.25}) {
      const Ball b = estimate_tmtb(ts, eps, 1e-6);
      CHECK(touching_radius(b.center, ts) ==
            Catch::Approx(b.radius).margin(1e-12));
      CHECK(b.radius <= (1.0 + eps) * std::max(r_exact, 1e-6) + 1e-9);
      CHECK(b.radius >= r_exact - 1e-9);
    }
  }
}

TEST_CASE("estimate_tmtb handles a point-trajectory source") {
  const TrajectorySet ts({Trajectory({{5, 5}}), Trajectory({{0, 0}, {1, 0}}),
                          Trajectory({{8, 8}, {9, 9}})});
  const double r_exact = exact_tmtb(ts).radius;
  const Ball b = estimate_tmtb(ts, 0.5, 1e-6);
  CHECK(b.radius <= 1.5 * std::max(r_exact, 1e-6) + 1e-9);
  CHECK(b.radius >= r_exact - 1e-9);
}
