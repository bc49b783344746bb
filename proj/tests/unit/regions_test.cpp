#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "dimac/channels.hpp"
#include "dimac/errors.hpp"
#include "dimac/geometry.hpp"
#include "dimac/random_instances.hpp"
#include "dimac/regions.hpp"
#include "oracles.hpp"

using namespace dimac;
using geom::Point;

namespace {

std::vector<Point> random_cloud(std::mt19937_64& rng, std::size_t count) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> p;
  for (std::size_t k = 0; k < count; ++k) p.push_back({u(rng), u(rng)});
  return p;
}

void expect_same_vertices(const std::vector<Point>& a, const std::vector<Point>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  std::size_t shift = 0;
  for (; shift < b.size(); ++shift) {
    if (std::abs(a[0].x - b[shift].x) <= tol && std::abs(a[0].y - b[shift].y) <= tol) break;
  }
  ASSERT_LT(shift, b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_NEAR(a[k].x, b[(k + shift) % b.size()].x, tol);
    EXPECT_NEAR(a[k].y, b[(k + shift) % b.size()].y, tol);
  }
}

RateRegion quarter_disc(double radius, std::size_t segments) {
  std::vector<RatePoint> pts;
  for (std::size_t k = 0; k <= segments; ++k) {
    const double t = std::numbers::pi / 2.0 * static_cast<double>(k) / static_cast<double>(segments);
    pts.push_back({radius * std::cos(t), radius * std::sin(t)});
  }
  return convex_hull(pts);
}

InputPolicies uniform_binary(std::size_t n) {
  return InputPolicies::uniform(Alphabet(2), Alphabet(2), Alphabet(2), n);
}

}  // namespace

TEST(Geometry, HullMatchesGiftWrap) {
  std::mt19937_64 rng(201);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = random_cloud(rng, 5 + trial);
    expect_same_vertices(geom::convex_hull(pts).vertices(), oracle::gift_wrap(pts), 1e-15);
  }
}

TEST(Geometry, MinkowskiMatchesPairwiseSums) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_cloud(rng, 3 + trial % 9);
    const auto b = random_cloud(rng, 3 + trial % 7);
    std::vector<Point> sums;
    for (const auto& p : a) {
      for (const auto& q : b) sums.push_back(p + q);
    }
    const auto got = geom::minkowski_sum(geom::convex_hull(a), geom::convex_hull(b));
    expect_same_vertices(got.vertices(), oracle::gift_wrap(sums), 1e-12);
  }
}

TEST(Geometry, MinkowskiAlgebra) {
  std::mt19937_64 rng(203);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = geom::convex_hull(random_cloud(rng, 8));
    const auto b = geom::convex_hull(random_cloud(rng, 6));
    const auto c = geom::convex_hull(random_cloud(rng, 7));
    expect_same_vertices(geom::minkowski_sum(a, b).vertices(),
                         geom::minkowski_sum(b, a).vertices(), 1e-12);
    expect_same_vertices(geom::minkowski_sum(geom::minkowski_sum(a, b), c).vertices(),
                         geom::minkowski_sum(a, geom::minkowski_sum(b, c)).vertices(), 1e-12);
  }
}

TEST(Geometry, RegionIdentities) {
  const RateRegion tri = convex_hull({{1.0, 0.0}, {0.0, 1.0}});
  const RateRegion origin;
  EXPECT_EQ(hausdorff_distance(minkowski_sum(tri, origin), tri), 0.0);
  const RateRegion half = scale_region(tri, 0.5);
  EXPECT_LE(hausdorff_distance(minkowski_sum(half, half), tri), 1e-15);
  EXPECT_EQ(hausdorff_distance(tri, tri), 0.0);
  const auto v = tri.vertices();
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0].r1, 0.0);
  EXPECT_EQ(v[0].r2, 0.0);
  EXPECT_EQ(v[1].r1, 1.0);
  EXPECT_EQ(v[2].r2, 1.0);
}

TEST(Geometry, ShiftedSquare) {
  const auto sq = geom::convex_hull(std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto moved = geom::convex_hull(std::vector<Point>{{0.3, 0}, {1.3, 0}, {1.3, 1}, {0.3, 1}});
  EXPECT_NEAR(geom::hausdorff_distance(sq, moved), 0.3, 1e-15);
  EXPECT_THROW(geom::hausdorff_distance(sq, geom::ConvexPolygon()), InputError);
}

TEST(Geometry, HausdorffMatchesSamplingOracle) {
  std::mt19937_64 rng(204);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = geom::convex_hull(random_cloud(rng, 6 + trial % 5));
    auto cloud = random_cloud(rng, 7);
    for (auto& p : cloud) p = 0.8 * p + Point{0.2 * (trial % 3), 0.1};
    const auto b = geom::convex_hull(cloud);
    const double d = geom::hausdorff_distance(a, b);
    EXPECT_NEAR(d, oracle::sampled_hausdorff(a.vertices(), b.vertices(), 10000), 1e-3);
    EXPECT_EQ(d, geom::hausdorff_distance(b, a));
    EXPECT_NEAR(a.area(), oracle::shoelace(a.vertices()), 1e-14);
  }
}

TEST(Geometry, TriangleInequality) {
  std::mt19937_64 rng(205);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = geom::convex_hull(random_cloud(rng, 6));
    const auto b = geom::convex_hull(random_cloud(rng, 6));
    const auto c = geom::convex_hull(random_cloud(rng, 6));
    EXPECT_LE(geom::hausdorff_distance(a, c),
              geom::hausdorff_distance(a, b) + geom::hausdorff_distance(b, c) + 1e-12);
  }
}

TEST(Pentagon, CornersAndContainment) {
  const Pentagon p{0.7, 0.6, 1.0};
  const auto r = RateRegion::from_pentagon(p);
  EXPECT_NEAR(r.max_sum_rate(), 1.0, 1e-15);
  EXPECT_NEAR(r.max_r1(), 0.7, 1e-15);
  EXPECT_NEAR(r.max_r2(), 0.6, 1e-15);
  EXPECT_EQ(r.vertices().size(), 5u);
  for (const auto& c : p.corners()) EXPECT_TRUE(p.contains(c, 1e-15));
  EXPECT_FALSE(p.contains({0.5, 0.55}));
  const Pentagon loose{0.3, 0.2, 2.0};
  EXPECT_EQ(RateRegion::from_pentagon(loose).vertices().size(), 4u);
}

TEST(Pentagon, ClosedFormBounds) {
  const FsMac clean = additive_modq_mac(2, NoiseChain::bernoulli(0.0));
  const Pentagon in = pentagon_inner(uniform_binary(1), clean, 1);
  EXPECT_NEAR(in.c1, 1.0, 1e-12);
  EXPECT_NEAR(in.c2, 1.0, 1e-12);
  EXPECT_NEAR(in.c12, 1.0, 1e-12);
  const double cap = 1.0 - oracle::h2(0.1);
  const Pentagon out = pentagon_outer(uniform_binary(1), additive_modq_mac(2, NoiseChain::bernoulli(0.1)),
                                      1, S0Mode::stationary());
  EXPECT_NEAR(out.c1, cap, 1e-12);
  EXPECT_NEAR(out.c2, cap, 1e-12);
  EXPECT_NEAR(out.c12, cap, 1e-12);
  const FsMac flat = memoryless_mac(2, 2, 2, std::vector<double>(8, 0.5));
  const Pentagon z = pentagon_inner(uniform_binary(1), flat, 1);
  EXPECT_EQ(z.c1, 0.0);
  EXPECT_EQ(z.c2, 0.0);
  EXPECT_EQ(z.c12, 0.0);
}

TEST(Pentagon, InnerCarriesStatePenalty) {
  const FsMac ge = gilbert_elliott_mac(0.2, 0.3, 0.02, 0.1);
  std::mt19937_64 rng(206);
  for (int trial = 0; trial < 5; ++trial) {
    const auto pol = random_policies(ge, 2, true, rng);
    const Pentagon in = pentagon_inner(pol, ge, 2);
    const Pentagon worst = pentagon_outer(pol, ge, 2, S0Mode::worst());
    EXPECT_NEAR(in.c1, std::max(0.0, worst.c1 - 0.5), 1e-12);
    EXPECT_NEAR(in.c2, std::max(0.0, worst.c2 - 0.5), 1e-12);
    EXPECT_NEAR(in.c12, std::max(0.0, worst.c12 - 0.5), 1e-12);
  }
}

TEST(Pentagon, OuterDominatesInner) {
  std::mt19937_64 rng(207);
  for (int trial = 0; trial < 30; ++trial) {
    const FsMac ch = random_fsmac(2, 2, 2, 2, rng).with_initial_dist(random_pmf(2, rng));
    const std::size_t n = 1 + trial % 3;
    const auto pol = random_policies(ch, n, trial % 2 == 0, rng);
    const Pentagon in = pentagon_inner(pol, ch, n);
    for (const S0Mode& m : {S0Mode::worst(), S0Mode::stationary(), S0Mode::given(0)}) {
      const Pentagon out = pentagon_outer(pol, ch, n, m);
      EXPECT_LE(in.c1, out.c1 + 1e-12);
      EXPECT_LE(in.c2, out.c2 + 1e-12);
      EXPECT_LE(in.c12, out.c12 + 1e-12);
    }
    const Pentagon worst = pentagon_outer(pol, ch, n, S0Mode::worst());
    const Pentagon st = pentagon_outer(pol, ch, n, S0Mode::stationary());
    const double bound = 2.0 / static_cast<double>(n);
    EXPECT_LE(st.c12 - in.c12, bound + (st.c12 - worst.c12) + 1e-12);
  }
}

TEST(RegionUnion, ClosedFormRegions) {
  RegionRequest req;
  req.resolution = 4;
  const auto tri = region_union(additive_modq_mac(2, NoiseChain::bernoulli(0.0)), req);
  const auto v = tri.vertices();
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v[1].r1, 1.0, 1e-12);
  EXPECT_NEAR(v[2].r2, 1.0, 1e-12);
  EXPECT_EQ(tri.metadata().pairs, 25u);
  const auto none = region_union(memoryless_mac(2, 2, 2, std::vector<double>(8, 0.5)), req);
  EXPECT_EQ(none.vertices().size(), 1u);
  req.resolution = 64;
  const auto bsc = region_union(additive_modq_mac(2, NoiseChain::bernoulli(0.1)), req);
  EXPECT_NEAR(bsc.max_sum_rate(), 1.0 - oracle::h2(0.1), 1e-3);
  EXPECT_NEAR(bsc.max_r1(), 1.0 - oracle::h2(0.1), 1e-3);
}

TEST(RegionUnion, ContainsEveryPentagonAndMatchesClassicalUnion) {
  std::mt19937_64 rng(208);
  const FsMac ch = random_fsmac(1, 2, 2, 3, rng);
  RegionRequest req;
  req.resolution = 8;
  req.threads = 2;
  const auto region = region_union(ch, req);
  const PolicyGrid grid(PolicyFamily::Iid, 8, 1, Alphabet(2), Alphabet(1));
  std::vector<RatePoint> corners;
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = 0; b < grid.size(); ++b) {
      const InputPolicies pol(grid.kernel(a), grid.kernel(b), FeedbackFn::none(ch.out()),
                              FeedbackFn::none(ch.out()));
      const Pentagon p = pentagon_outer(pol, ch, 1, S0Mode::given(0));
      for (const auto& c : p.corners()) {
        EXPECT_LE(region.distance(c), 1e-12);
        corners.push_back(c);
      }
    }
  }
  EXPECT_LE(hausdorff_distance(region, convex_hull(corners)), 1e-12);
  req.threads = 1;
  EXPECT_EQ(hausdorff_distance(region, region_union(ch, req)), 0.0);
}

TEST(RegionUnion, BudgetIsEnforced) {
  RegionRequest req;
  req.n = 2;
  req.family = PolicyFamily::FeedbackDriven;
  req.resolution = 8;
  req.f1 = FeedbackFn::perfect(Alphabet(2));
  req.f2 = FeedbackFn::perfect(Alphabet(2));
  req.max_pairs = 1000;
  EXPECT_THROW(region_union(additive_modq_mac(2, NoiseChain::bernoulli(0.1)), req), SizingError);
}

TEST(SupAdditivity, ConstantAndDiscSequences) {
  const RateRegion tri = convex_hull({{1.0, 0.0}, {0.0, 1.0}});
  const auto rep = supadditivity_check({tri, tri, tri, tri}, {{1, 1}, {1, 2}, {2, 2}}, 0.0);
  EXPECT_TRUE(rep.all_hold);
  for (const auto& e : rep.entries) EXPECT_LE(e.excess, 1e-12);

  std::vector<RateRegion> discs;
  for (std::size_t n = 1; n <= 12; ++n) {
    discs.push_back(quarter_disc(1.0 - 1.0 / static_cast<double>(n), 64));
  }
  EXPECT_TRUE(supadditivity_check(discs, {{1, 1}, {2, 3}, {5, 7}, {4, 4}}, 1e-12).all_hold);
  const auto lim = limit_region_estimate(discs);
  for (std::size_t k = 0; k < lim.gaps.size(); ++k) {
    EXPECT_LT(lim.gaps[k], 1.0 / static_cast<double>(k + 1));
  }
  EXPECT_NEAR(hausdorff_distance(lim.limit, discs.back()), 0.0, 1e-12);

  std::vector<RateRegion> shrinking{tri, scale_region(tri, 0.2)};
  EXPECT_FALSE(supadditivity_check(shrinking, {{1, 1}}, 1e-3).all_hold);
  EXPECT_THROW(supadditivity_check(shrinking, {{2, 1}}, 0.0), InputError);
}

TEST(Limit, ConstantSequence) {
  const RateRegion tri = convex_hull({{0.4, 0.0}, {0.3, 0.2}, {0.0, 0.25}});
  const auto lim = limit_region_estimate({tri, tri, tri});
  for (double g : lim.gaps) EXPECT_EQ(g, 0.0);
  EXPECT_EQ(hausdorff_distance(lim.limit, tri), 0.0);
  EXPECT_THROW(limit_region_estimate({tri}), InputError);
}

TEST(Limit, MemorylessGilbertElliottApproachesCapacity) {
  const double p = 0.1;
  const FsMac ge = gilbert_elliott_mac(0.2, 0.3, p, p);
  RegionRequest req;
  req.variant = Variant::Inner;
  req.resolution = 2;
  std::vector<RateRegion> regions;
  double prev = 1.0;
  for (std::size_t n = 1; n <= 3; ++n) {
    req.n = n;
    regions.push_back(region_union(ge, req));
    const double gap = 1.0 - oracle::h2(p) - regions.back().max_sum_rate();
    EXPECT_NEAR(gap, std::min(1.0 - oracle::h2(p), 1.0 / static_cast<double>(n)), 1e-9);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  const auto lim = limit_region_estimate(regions);
  EXPECT_NEAR(lim.limit.max_sum_rate(), 1.0 - oracle::h2(p) - 1.0 / 3.0, 1e-9);
}

TEST(Limit, InnerOuterGapShrinksForMarkovStates) {
  const FsMac ge = gilbert_elliott_mac(0.3, 0.3, 0.0, 0.1);
  RegionRequest req;
  req.resolution = 2;
  req.s0 = S0Mode::stationary();
  double prev = 1e9;
  for (std::size_t n = 1; n <= 3; ++n) {
    req.n = n;
    req.variant = Variant::Inner;
    const auto in = region_union(ge, req);
    req.variant = Variant::Outer;
    const auto out = region_union(ge, req);
    const double gap = hausdorff_distance(in, out);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
}
