// tmtb: minimum touching ball solvers for sets of planar trajectories.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tmtb/approx.hpp"
#include "tmtb/exact.hpp"
#include "tmtb/grid_oracle.hpp"
#include "tmtb/instance_gen.hpp"
#include "tmtb/io.hpp"
#include "tmtb/lp_solver.hpp"
#include "tmtb/monster.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitInternal = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

tmtb::TrajectorySet load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tmtb::ParseError("cannot open input file: " + path, 0, 0);
  auto parsed = tmtb::parse_trajectories_text(in);
  for (const std::string& w : parsed.warnings)
    std::cerr << "warning: " << w << "\n";
  if (parsed.trajectories.empty())
    throw tmtb::ParseError("input contains no trajectories", 0, 0);
  return tmtb::TrajectorySet(std::move(parsed.trajectories));
}

void emit(const tmtb::ResultRecord& rec, const std::string& record_path,
          const std::string& svg_out, const tmtb::TrajectorySet& ts,
          const tmtb::Ball& ball, const tmtb::GhostSet* ghosts,
          bool raise_overlaps) {
  std::cout << "solver:        " << rec.solver << "\n"
            << "center:        (" << tmtb::format_number(rec.center.x) << ", "
            << tmtb::format_number(rec.center.y) << ")\n"
            << "radius:        " << tmtb::format_number(rec.radius) << "\n"
            << "max residual:  " << tmtb::format_number(rec.max_residual)
            << "\n"
            << "wall time:     " << tmtb::format_number(rec.wall_time_ms)
            << " ms\n";
  if (!rec.params.empty()) std::cout << "params:        " << rec.params << "\n";

  if (!rec.residual_ok())
    throw std::logic_error("result record violates its residual invariant");

  if (!record_path.empty()) {
    std::ofstream out(record_path, std::ios::app);
    if (!out)
      throw tmtb::ParseError("cannot open record file: " + record_path, 0, 0);
    out << rec.to_line() << "\n";
  }
  if (!svg_out.empty()) {
    tmtb::SvgOptions opt;
    opt.raise_overlaps = raise_overlaps;
    std::ofstream out(svg_out);
    if (!out)
      throw tmtb::ParseError("cannot open svg file: " + svg_out, 0, 0);
    out << tmtb::render_svg(ts, ball, ghosts, opt);
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum touching ball for a set of planar trajectories"};
  app.require_subcommand(1);

  std::string input, record_path, svg_out, out_path;
  double eps = 0.25, rho = 1e-6, grid_width = 0.01;
  std::uint64_t seed = 1;
  bool raise_overlaps = false;
  int monster_n = 7;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    auto* in = cmd->add_option("--input", input, "trajectory text file");
    if (needs_input) in->required();
    cmd->add_option("--record", record_path,
                    "append a machine-readable result line to this file");
    cmd->add_option("--svg-out", svg_out, "write an SVG figure to this file");
    cmd->add_flag("--raise-overlaps", raise_overlaps,
                  "nudge exactly-overlapping trajectories apart in the SVG");
  };

  auto* c_exact = app.add_subcommand("exact", "exact minimum touching ball");
  add_common(c_exact, true);

  auto* c_lp = app.add_subcommand(
      "lp", "randomized LP-type solver (single-segment trajectories only)");
  add_common(c_lp, true);
  c_lp->add_option("--seed", seed, "shuffle seed");

  auto* c_approx =
      app.add_subcommand("approx", "(eps, rho)-approximate touching ball");
  add_common(c_approx, true);
  c_approx->add_option("--eps", eps, "approximation factor, in (0, 1/2]");
  c_approx->add_option("--rho", rho, "radius floor, >= 0");

  auto* c_oracle =
      app.add_subcommand("oracle", "brute-force grid baseline");
  add_common(c_oracle, true);
  c_oracle->add_option("--grid-width", grid_width, "grid cell width");

  auto* c_gen = app.add_subcommand(
      "gen-monster", "emit the unbounded-basis stress configuration");
  c_gen->add_option("--n", monster_n, "number of trajectories, > 4")
      ->required();
  c_gen->add_option("--out", out_path, "output file (default stdout)");

  auto* c_render = app.add_subcommand("render", "draw an input file as SVG");
  add_common(c_render, true);
  c_render->get_option("--svg-out")->required();

  std::vector<int> bench_n{100, 200};
  int bench_k = 3, bench_seeds = 5;
  auto* c_bench =
      app.add_subcommand("bench", "median wall times for approx and exact");
  c_bench->add_option("--n", bench_n, "trajectory counts")->delimiter(',');
  c_bench->add_option("--k", bench_k, "segments per trajectory");
  c_bench->add_option("--eps", eps, "approx eps");
  c_bench->add_option("--seeds", bench_seeds, "instances per configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (c_gen->parsed()) {
      if (monster_n <= 4)
        throw UsageError("gen-monster: --n must be greater than 4");
      const tmtb::TrajectorySet ts = tmtb::lp_monster(monster_n);
      if (out_path.empty()) {
        tmtb::write_trajectories_text(std::cout, ts);
      } else {
        std::ofstream out(out_path);
        if (!out)
          throw tmtb::ParseError("cannot open output file: " + out_path, 0, 0);
        tmtb::write_trajectories_text(out, ts);
      }
      return 0;
    }

    if (c_bench->parsed()) {
      if (bench_seeds < 1 || bench_k < 1 || bench_n.empty())
        throw UsageError("bench: need --seeds >= 1, --k >= 1, non-empty --n");
      std::printf("%8s %4s %6s %14s %14s\n", "n", "k", "eps", "approx_ms",
                  "exact_ms");
      for (int n : bench_n) {
        std::vector<double> ta, te;
        for (int s = 0; s < bench_seeds; ++s) {
          const tmtb::TrajectorySet ts = tmtb::random_trajectory_set(
              1000u * static_cast<unsigned>(n) + static_cast<unsigned>(s), n,
              bench_k, bench_k);
          double t0 = now_ms();
          tmtb::estimate_tmtb(ts, eps, 1e-6);
          ta.push_back(now_ms() - t0);
          t0 = now_ms();
          tmtb::exact_tmtb(ts);
          te.push_back(now_ms() - t0);
        }
        std::printf("%8d %4d %6g %14.3f %14.3f\n", n, bench_k, eps,
                    median(ta), median(te));
      }
      return 0;
    }

    const tmtb::TrajectorySet ts = load_input(input);
    tmtb::Ball ball;
    const tmtb::GhostSet* ghosts = nullptr;
    tmtb::GhostSet ghost_storage;
    std::string solver, params;

    const double t0 = now_ms();
    if (c_exact->parsed()) {
      solver = "exact";
      ball = tmtb::exact_tmtb(ts);
    } else if (c_lp->parsed()) {
      for (const auto& t : ts.trajectories)
        if (t.segment_count() != 1)
          throw UsageError(
              "lp requires every trajectory to be a single segment: with "
              "polyline trajectories the problem's combinatorial dimension "
              "is unbounded, so no fixed basis size exists — use `exact` or "
              "`approx` instead");
      std::vector<tmtb::Segment> segs;
      for (const auto& t : ts.trajectories) segs.push_back(t.segment(0));
      solver = "lp";
      params = "seed=" + std::to_string(seed);
      ball = tmtb::lp_segment_mtb(segs, seed).ball;
    } else if (c_approx->parsed()) {
      if (!(eps > 0.0 && eps <= 0.5))
        throw UsageError("approx: --eps must be in (0, 1/2]");
      if (rho < 0.0) throw UsageError("approx: --rho must be >= 0");
      solver = "approx";
      params = "eps=" + tmtb::format_number(eps) +
               " rho=" + tmtb::format_number(rho);
      auto est = tmtb::estimate_tmtb_detailed(ts, eps, rho);
      ball = est.ball;
      ghost_storage = std::move(est.ghosts);
      ghosts = &ghost_storage;
    } else if (c_oracle->parsed()) {
      if (!(grid_width > 0.0))
        throw UsageError("oracle: --grid-width must be > 0");
      solver = "oracle";
      params = "grid-width=" + tmtb::format_number(grid_width);
      ball = tmtb::grid_tmtb(ts, grid_width);
    } else if (c_render->parsed()) {
      tmtb::SvgOptions opt;
      opt.raise_overlaps = raise_overlaps;
      std::ofstream out(svg_out);
      if (!out)
        throw tmtb::ParseError("cannot open svg file: " + svg_out, 0, 0);
      out << tmtb::render_svg(ts, std::nullopt, nullptr, opt);
      return 0;
    }
    const double wall = now_ms() - t0;

    const tmtb::ResultRecord rec =
        tmtb::make_result_record(solver, ball, ts, wall, params);
    emit(rec, record_path, svg_out, ts, ball, ghosts, raise_overlaps);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tmtb::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
