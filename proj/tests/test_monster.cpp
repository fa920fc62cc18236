#include <catch2/catch_amalgamated.hpp>

#include "tmtb/exact.hpp"
#include "tmtb/monster.hpp"

using namespace tmtb;

TEST_CASE("lp_monster layout for n = 7") {
  const TrajectorySet ts = lp_monster(7);
  REQUIRE(ts.size() == 7);

  const auto& base = ts.trajectories[0].waypoints();
  REQUIRE(base.size() == 2);
  CHECK(base[0].x == 0.0);
  CHECK(base[0].y == 0.0);
  CHECK(base[1].x == 9.5);
  CHECK(base[1].y == -0.5);

  const auto& stab = ts.trajectories[1].waypoints();
  REQUIRE(stab.size() == 3);
  CHECK(stab[0].x == 0.0);
  CHECK(stab[0].y == 4.0);
  CHECK(stab[1].x == 3.5);
  CHECK(stab[1].y == 1.0);
  CHECK(stab[2].x == 9.5);
  CHECK(stab[2].y == 1.0);

  // First arch (i = 2).
  const auto& arch = ts.trajectories[2].waypoints();
  REQUIRE(arch.size() == 5);
  CHECK(arch[0].x == 0.0);
  CHECK(arch[0].y == 1.0);
  CHECK(arch[1].x == 2.0);
  CHECK(arch[1].y == 1.0);
  CHECK(arch[2].x == 3.25);
  CHECK(arch[2].y == 4.0);
  CHECK(arch[3].x == 4.5);
  CHECK(arch[3].y == 1.0);
  CHECK(arch[4].x == 9.5);
  CHECK(arch[4].y == 1.0);

  CHECK(ts.trajectories[0].segment_count() == 1);
  CHECK(ts.trajectories[1].segment_count() == 2);
  for (std::size_t i = 2; i < 7; ++i) {
    CHECK(ts.trajectories[i].segment_count() == 4);
    for (const Point& w : ts.trajectories[i].waypoints()) {
      CHECK(w.y >= 1.0);
      CHECK(w.y <= 4.0);
    }
  }
}

TEST_CASE("lp_monster rejects tiny n") {
  CHECK_THROWS_AS(lp_monster(4), std::invalid_argument);
  CHECK_THROWS_AS(lp_monster(0), std::invalid_argument);
}

TEST_CASE("every monster trajectory is essential") {
  for (int n = 5; n <= 7; ++n) {
    const MonsterReport report = monster_removals(n);
    CHECK(report.all_essential);
    CHECK(report.full_radius > 0.5);
  }
}

TEST_CASE("monster removal outcomes") {
  const MonsterReport report = monster_removals(7);
  // Without the slanted base every remaining trajectory passes through a
  // common point at height 1, so the radius collapses to zero.
  CHECK(report.removals[0].leave_one_out.radius <= 1e-9);
  // Without the descending stabilizer the optimum snaps to the far left.
  const Ball& no_stab = report.removals[1].leave_one_out;
  CHECK(no_stab.center.x == Catch::Approx(0.0).margin(1e-6));
  CHECK(no_stab.center.y == Catch::Approx(0.5).margin(1e-6));
  CHECK(no_stab.radius == Catch::Approx(0.5).margin(1e-6));
}
