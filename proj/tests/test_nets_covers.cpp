// Separated nets and the interior ball cover: greedy construction order,
// maximality/separation, the exact radius rule, and bounded overlap.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bmms/generators.hpp"
#include "bmms/net.hpp"
#include "bmms/space.hpp"
#include "bmms/whitney.hpp"

using namespace bmms;

TEST_CASE("greedy net scans candidates in position order") {
  Space sp = gen_interval_grid(8).to_space();
  MeasuredSubset ground = whole_space(sp);
  // atoms 0..7 sit at (k+1)/9, atoms 8 and 9 at 0 and 1
  SeparatedNet net = maximal_separated_net(ground, 0.3, 0);
  CHECK(net.members == std::vector<int>{0, 3, 6});
  CHECK(verify_net(ground, net));

  SeparatedNet alt = maximal_separated_net(ground, 0.3, 6);
  CHECK(alt.members == std::vector<int>{6, 0, 3});
  CHECK(verify_net(ground, alt));
}

TEST_CASE("net rejects bad parameters") {
  Space sp = gen_interval_grid(4).to_space();
  MeasuredSubset ground = whole_space(sp);
  CHECK_THROWS_AS(maximal_separated_net(ground, 0.0), Error);
  CHECK_THROWS_AS(maximal_separated_net(ground, 0.5, -1), Error);
  CHECK_THROWS_AS(maximal_separated_net(ground, 0.5, 99), Error);
  CHECK_THROWS_AS(
      maximal_separated_net_seeded(ground, 0.5, std::vector<int>{0, 1}),
      Error);  // initial members closer than the separation
}

TEST_CASE("seeded nets keep the initial members first") {
  Space sp = gen_interval_grid(8).to_space();
  MeasuredSubset ground = whole_space(sp);
  SeparatedNet net =
      maximal_separated_net_seeded(ground, 0.3, std::vector<int>{7});
  CHECK(net.members.front() == 7);
  CHECK(verify_net(ground, net));
}

TEST_CASE("net properties hold across separations and seeds") {
  for (const char* name : {"interval-grid", "square-grid-bottom-edge"}) {
    Space sp = generate_example(name, 12).to_space();
    MeasuredSubset ground = whole_space(sp);
    for (double sep : {0.05, 0.17, 0.4, 1.5}) {
      for (int seed : {0, 3, ground.size() - 1}) {
        SeparatedNet net = maximal_separated_net(ground, sep, seed);
        CHECK(verify_net(ground, net));
        CHECK(net.members.front() == seed);
      }
    }
  }
}

TEST_CASE("interval-grid(4) cover is fully determined") {
  Domain dom = gen_interval_grid(4).to_domain();
  WhitneyCover cov = whitney_cover(dom);
  REQUIRE(cov.balls.size() == 4);
  CHECK(cov.levels == std::vector<int>{-5, -4});

  // atoms at 0.2/0.8 have boundary distance 0.2, radius 0.025, level -5;
  // atoms at 0.4/0.6 have distance 0.4, radius 0.05, level -4
  const WhitneyBall& b0 = cov.balls[0];
  CHECK(b0.level == -5);
  CHECK(b0.center == 0);
  CHECK(b0.radius == 0.2 / 8);
  CHECK(b0.anchor == 4);
  CHECK(b0.shadow == std::vector<int>{4});
  CHECK(b0.enlarged_shadow == std::vector<int>{4});  // 32r = 0.8 < 1

  CHECK(cov.balls[1].center == 3);
  CHECK(cov.balls[1].anchor == 5);
  CHECK(cov.balls[2].level == -4);
  CHECK(cov.balls[2].center == 1);
  CHECK(cov.balls[2].radius == 0.4 / 8);
  CHECK(cov.balls[2].enlarged_shadow == std::vector<int>{4, 5});  // 1.6 > 1
  CHECK(cov.balls[3].center == 2);

  CHECK(verify_whitney(dom, cov).pass);
}

TEST_CASE("anchor ties resolve to the smallest boundary id") {
  // the middle atom of interval-grid(3) is equidistant from both endpoints
  Domain dom = gen_interval_grid(3).to_domain();
  WhitneyCover cov = whitney_cover(dom);
  bool found = false;
  for (const auto& b : cov.balls) {
    if (b.center == 1) {  // the atom at 0.5
      CHECK(b.anchor == 3);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("cover structure on the interval grids") {
  Domain dom = gen_interval_grid(64).to_domain();
  WhitneyCover cov = whitney_cover(dom);
  WhitneyCheck chk = verify_whitney(dom, cov);
  CHECK(chk.pass);
  CHECK(chk.covers_interior);
  CHECK(chk.radius_rule_exact);
  CHECK(chk.level_windows);
  CHECK(chk.level_separation);
  CHECK(cov.balls.size() == 35);
  CHECK(cov.levels.size() == 6);
  CHECK(chk.max_overlap_2dilate == 5);
  CHECK(shadow_overlap_count(dom, cov.balls, 32.0) == 23);
}

TEST_CASE("cover structure on the square grid") {
  Domain dom = gen_square_grid_bottom_edge(8).to_domain();
  WhitneyCover cov = whitney_cover(dom);
  WhitneyCheck chk = verify_whitney(dom, cov);
  CHECK(chk.pass);
  CHECK(cov.balls.size() == 56);
  CHECK(cov.levels.size() == 3);
  CHECK(chk.max_overlap_2dilate == 7);
  CHECK(shadow_overlap_count(dom, cov.balls, 32.0) == 55);
}

TEST_CASE("radius rule is exact floating point on every ball") {
  for (int n : {16, 48}) {
    Domain dom = gen_interval_grid(n).to_domain();
    for (const auto& b : whitney_cover(dom).balls) {
      CHECK(b.radius == dom.dist_to_boundary(b.center) / 8.0);
      CHECK(b.radius > std::ldexp(1.0, b.level - 1));
      CHECK(b.radius <= std::ldexp(1.0, b.level));
    }
  }
}

TEST_CASE("shadows are the open anchor balls intersected with the boundary") {
  Domain dom = gen_square_grid_bottom_edge(6).to_domain();
  for (const auto& b : whitney_cover(dom).balls) {
    for (int s : b.shadow) {
      CHECK(dom.is_boundary(s));
      CHECK(dom.space().dist(b.anchor, s) < b.radius);
    }
    for (int s : b.enlarged_shadow) {
      CHECK(dom.space().dist(b.anchor, s) < 32.0 * b.radius);
    }
    // anchor is always inside its own shadow
    CHECK(std::find(b.shadow.begin(), b.shadow.end(), b.anchor) !=
          b.shadow.end());
  }
}

TEST_CASE("overlap count matches a direct scan") {
  Domain dom = gen_interval_grid(32).to_domain();
  WhitneyCover cov = whitney_cover(dom);
  std::vector<int> atoms(dom.space().size());
  for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i] = (int)i;
  int reported = overlap_count(dom.space(), cov.balls, atoms, 2.0);
  int direct = 0;
  for (int a : atoms) {
    int c = 0;
    for (const auto& b : cov.balls)
      if (dom.space().dist(a, b.center) < 2.0 * b.radius) ++c;
    direct = std::max(direct, c);
  }
  CHECK(reported == direct);
}
