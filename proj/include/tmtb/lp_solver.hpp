#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmtb/exact.hpp"
#include "tmtb/geometry.hpp"

namespace tmtb {

struct Basis {
  std::vector<Segment> segments;  // at most 3
  Ball ball;
};

struct LpResult {
  Ball ball;
  Basis basis;
  std::uint64_t violation_tests = 0;
};

// Exact minimal touching ball of at most 3 segments, by candidate
// enumeration on single-segment trajectories.
inline Ball mtb_small(std::span<const Segment> segments) {
  if (segments.size() > 3)
    throw std::invalid_argument("mtb_small: at most 3 segments");
  if (segments.empty()) return Ball(Point{0.0, 0.0}, 0.0);
  if (segments.size() == 1)
    return Ball(midpoint(segments[0].a, segments[0].b), 0.0);
  std::vector<Trajectory> ts;
  for (const Segment& s : segments)
    ts.push_back(Trajectory({s.a, s.b}));
  return exact_tmtb(TrajectorySet(std::move(ts)));
}

inline bool violates(const Ball& ball, const Segment& s) {
  const double d = dist_point_segment(ball.center, s);
  return d > ball.radius + std::max(kAbsTol, kRelTol * std::max(1.0, ball.radius));
}

namespace detail {

struct WelzlState {
  const std::vector<Segment>* segments = nullptr;
  std::uint64_t violation_tests = 0;
  std::uint64_t basis_evals = 0;
  std::uint64_t basis_eval_limit = 0;
};

inline Ball welzl_recurse(WelzlState& st, std::size_t m,
                          std::vector<Segment>& forced,
                          std::vector<Segment>& basis_out) {
  if (m == 0 || forced.size() == 3) {
    if (++st.basis_evals > st.basis_eval_limit)
      throw std::runtime_error(
          "lp_segment_mtb: basis recomputation limit exceeded "
          "(tolerance-induced cycling?)");
    basis_out = forced;
    return mtb_small(forced);
  }
  Ball b = welzl_recurse(st, m - 1, forced, basis_out);
  const Segment& s = (*st.segments)[m - 1];
  ++st.violation_tests;
  if (!violates(b, s)) return b;
  forced.push_back(s);
  b = welzl_recurse(st, m - 1, forced, basis_out);
  forced.pop_back();
  return b;
}

}  // namespace detail

// Randomized LP-type solver for the single-segment case (combinatorial
// dimension 3): shuffle, insert constraints, recompute the basis with the
// violator forced in. The seed fixes the permutation for replay.
inline LpResult lp_segment_mtb(std::vector<Segment> segments,
                               std::uint64_t seed) {
  if (segments.empty())
    throw std::invalid_argument("lp_segment_mtb: needs at least one segment");

  std::mt19937_64 rng(seed);
  std::shuffle(segments.begin(), segments.end(), rng);

  detail::WelzlState st;
  st.segments = &segments;
  const std::uint64_t n = segments.size();
  st.basis_eval_limit = 10 * n * n + 64;

  std::vector<Segment> forced;
  std::vector<Segment> basis_segs;
  const Ball ball = detail::welzl_recurse(st, n, forced, basis_segs);
  return {ball, Basis{basis_segs, ball}, st.violation_tests};
}

struct AxiomViolation {
  enum class Kind { Monotonicity, Locality };
  Kind kind;
  std::string detail;
};

struct AxiomReport {
  int trials = 0;
  std::vector<AxiomViolation> violations;
  bool clean() const { return violations.empty(); }
};

// Empirically probes the LP-type axioms with the exact solver as the
// objective f. On single-segment inputs the report must come back clean.
inline AxiomReport axiom_probe(const TrajectorySet& ts, int trials,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = ts.size();

  auto radius_of = [&](const std::vector<std::size_t>& idx) {
    if (idx.empty()) return 0.0;
    std::vector<Trajectory> sub;
    for (std::size_t i : idx) sub.push_back(ts.trajectories[i]);
    return exact_tmtb(TrajectorySet(std::move(sub))).radius;
  };

  AxiomReport report;
  report.trials = trials;
  const double scale = diameter_2approx(ts);
  const double tol = std::max(kAbsTol, kRelTol * std::max(1.0, scale));

  for (int t = 0; t < trials; ++t) {
    // Random nested pair B subset of Y, plus a probe constraint x.
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    const std::size_t ylen = 1 + rng() % n;
    std::vector<std::size_t> y(all.begin(), all.begin() + ylen);
    const std::size_t blen = 1 + rng() % ylen;
    std::vector<std::size_t> b(y.begin(), y.begin() + blen);
    const std::size_t x = all[rng() % n];

    const double fb = radius_of(b);
    const double fy = radius_of(y);
    if (fb > fy + tol)
      report.violations.push_back(
          {AxiomViolation::Kind::Monotonicity,
           "f(B)=" + std::to_string(fb) + " > f(Y)=" + std::to_string(fy)});

    if (std::fabs(fb - fy) <= tol) {
      auto with = [&](std::vector<std::size_t> set) {
        if (std::find(set.begin(), set.end(), x) == set.end())
          set.push_back(x);
        return radius_of(set);
      };
      const double fbx = with(b);
      const double fyx = with(y);
      if (fbx > fb + tol && fyx <= fy + tol)
        report.violations.push_back(
            {AxiomViolation::Kind::Locality,
             "f(B+x)=" + std::to_string(fbx) + " grows but f(Y+x)=" +
                 std::to_string(fyx) + " does not"});
    }
  }
  return report;
}

}  // namespace tmtb
