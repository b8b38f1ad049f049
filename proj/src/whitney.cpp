#include "bmms/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bmms/net.hpp"

namespace bmms {

namespace {

// Unique integer level with 2^(level-1) < r <= 2^level.
int dyadic_level(double r) {
  int e;
  double m = std::frexp(r, &e);  // r = m * 2^e, m in [0.5, 1)
  return m == 0.5 ? e - 1 : e;
}

}  // namespace

WhitneyCover whitney_cover(const Domain& dom) {
  const Space& sp = dom.space();
  // bin interior atoms into dyadic bands keyed by the level of dist/8
  std::map<int, std::vector<int>> bands;
  for (int x : dom.interior()) {
    double r = dom.dist_to_boundary(x) / 8.0;
    bands[dyadic_level(r)].push_back(x);  // interior ids ascend already
  }
  WhitneyCover cover;
  for (auto& [level, atoms] : bands) {
    cover.levels.push_back(level);
    MeasuredSubset band;
    band.sp = &sp;
    band.idx = atoms;
    band.w.assign(atoms.size(), 1.0);
    double sep = std::ldexp(1.0, level - 1);
    SeparatedNet net = maximal_separated_net(band, sep);
    std::vector<int> centers;
    for (int pos : net.members) centers.push_back(atoms[pos]);
    std::sort(centers.begin(), centers.end());
    for (int c : centers) {
      WhitneyBall ball;
      ball.level = level;
      ball.center = c;
      ball.radius = dom.dist_to_boundary(c) / 8.0;
      ball.anchor = dom.nearest_boundary_atom(c);
      for (int b : dom.boundary()) {
        double d = sp.dist(ball.anchor, b);
        if (d < ball.radius) ball.shadow.push_back(b);
        if (d < 32.0 * ball.radius) ball.enlarged_shadow.push_back(b);
      }
      cover.balls.push_back(ball);
    }
  }
  return cover;
}

int overlap_count(const Space& sp, const std::vector<WhitneyBall>& balls,
                  const std::vector<int>& points, double K) {
  int best = 0;
  for (int x : points) {
    int c = 0;
    for (const auto& b : balls)
      if (sp.dist(x, b.center) < K * b.radius) ++c;
    best = std::max(best, c);
  }
  return best;
}

int shadow_overlap_count(const Domain& dom,
                         const std::vector<WhitneyBall>& balls, double K) {
  int best = 0;
  for (int z : dom.boundary()) {
    int c = 0;
    for (const auto& b : balls)
      if (dom.space().dist(z, b.anchor) < K * b.radius) ++c;
    best = std::max(best, c);
  }
  return best;
}

WhitneyCheck verify_whitney(const Domain& dom, const WhitneyCover& cover) {
  const Space& sp = dom.space();
  WhitneyCheck chk;

  chk.covers_interior = true;
  for (int x : dom.interior()) {
    bool in = false;
    for (const auto& b : cover.balls)
      if (sp.dist(x, b.center) < b.radius) {
        in = true;
        break;
      }
    if (!in) {
      chk.covers_interior = false;
      break;
    }
  }

  chk.radius_rule_exact = true;
  chk.level_windows = true;
  for (const auto& b : cover.balls) {
    if (b.radius != dom.dist_to_boundary(b.center) / 8.0)
      chk.radius_rule_exact = false;
    if (!(std::ldexp(1.0, b.level - 1) < b.radius &&
          b.radius <= std::ldexp(1.0, b.level)))
      chk.level_windows = false;
  }

  chk.level_separation = true;
  for (size_t a = 0; a < cover.balls.size(); ++a)
    for (size_t c = a + 1; c < cover.balls.size(); ++c) {
      const auto &A = cover.balls[a], &B = cover.balls[c];
      if (A.level != B.level) continue;
      if (sp.dist(A.center, B.center) < std::ldexp(1.0, A.level - 1))
        chk.level_separation = false;
    }

  std::vector<int> all(sp.size());
  for (int i = 0; i < sp.size(); ++i) all[i] = i;
  chk.max_overlap_2dilate = overlap_count(sp, cover.balls, all, 2.0);

  chk.pass = chk.covers_interior && chk.radius_rule_exact &&
             chk.level_windows && chk.level_separation;
  return chk;
}

}  // namespace bmms
