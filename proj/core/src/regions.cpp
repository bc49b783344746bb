#include "dimac/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "dimac/dirinfo.hpp"
#include "dimac/errors.hpp"
#include "dimac/parallel.hpp"

namespace dimac {

std::vector<RatePoint> Pentagon::corners() const {
  const double a = std::min(c1, c12);
  const double b = std::min(c2, c12);
  return {{a, 0.0},
          {a, std::max(0.0, std::min(b, c12 - a))},
          {std::max(0.0, std::min(a, c12 - b)), b},
          {0.0, b}};
}

bool Pentagon::contains(RatePoint p, double slack) const {
  return p.r1 >= -slack && p.r2 >= -slack && p.r1 <= c1 + slack && p.r2 <= c2 + slack &&
         p.r1 + p.r2 <= c12 + slack;
}

std::string to_string(Variant v) { return v == Variant::Inner ? "inner" : "outer"; }

Variant parse_variant(const std::string& text) {
  if (text == "inner") return Variant::Inner;
  if (text == "outer") return Variant::Outer;
  throw InputError(fmt::format("unknown region variant '{}' (inner|outer)", text));
}

RateRegion::RateRegion() : poly_(geom::ConvexPolygon::from_hull({{0.0, 0.0}})) {}

RateRegion::RateRegion(geom::ConvexPolygon poly, RegionMetadata meta)
    : poly_(std::move(poly)), meta_(std::move(meta)) {}

RateRegion RateRegion::from_points(const std::vector<RatePoint>& points, RegionMetadata meta) {
  std::vector<geom::Point> p{{0.0, 0.0}};
  for (const RatePoint& q : points) {
    if (!std::isfinite(q.r1) || !std::isfinite(q.r2)) throw InputError("non-finite rate point");
    if (q.r1 < -1e-12 || q.r2 < -1e-12) throw InputError("negative rate point");
    const double x = std::max(0.0, q.r1);
    const double y = std::max(0.0, q.r2);
    p.push_back({x, y});
    p.push_back({x, 0.0});
    p.push_back({0.0, y});
  }
  std::vector<geom::Point> v = geom::convex_hull(p).vertices();
  const auto origin = std::find(v.begin(), v.end(), geom::Point{0.0, 0.0});
  std::rotate(v.begin(), origin, v.end());
  return RateRegion(geom::ConvexPolygon::from_hull(std::move(v)), std::move(meta));
}

RateRegion RateRegion::from_pentagon(const Pentagon& p, RegionMetadata meta) {
  return from_points(p.corners(), std::move(meta));
}

std::vector<RatePoint> RateRegion::vertices() const {
  std::vector<RatePoint> out;
  for (const auto& p : poly_.vertices()) out.push_back({p.x, p.y});
  return out;
}

double RateRegion::max_sum_rate() const {
  double best = 0.0;
  for (const auto& p : poly_.vertices()) best = std::max(best, p.x + p.y);
  return best;
}

double RateRegion::max_r1() const {
  double best = 0.0;
  for (const auto& p : poly_.vertices()) best = std::max(best, p.x);
  return best;
}

double RateRegion::max_r2() const {
  double best = 0.0;
  for (const auto& p : poly_.vertices()) best = std::max(best, p.y);
  return best;
}

double RateRegion::distance(RatePoint p) const { return geom::distance({p.r1, p.r2}, poly_); }

namespace {

std::vector<RatePoint> to_rate_points(const geom::ConvexPolygon& poly) {
  std::vector<RatePoint> out;
  for (const auto& p : poly.vertices()) out.push_back({p.x, p.y});
  return out;
}

}  // namespace

RateRegion minkowski_sum(const RateRegion& a, const RateRegion& b) {
  return RateRegion::from_points(to_rate_points(geom::minkowski_sum(a.polygon(), b.polygon())),
                                 a.metadata());
}

RateRegion scale_region(const RateRegion& a, double c) {
  return RateRegion::from_points(to_rate_points(geom::scale(a.polygon(), c)), a.metadata());
}

RateRegion convex_hull(const std::vector<RatePoint>& points) {
  return RateRegion::from_points(points);
}

double hausdorff_distance(const RateRegion& a, const RateRegion& b) {
  return geom::hausdorff_distance(a.polygon(), b.polygon());
}

namespace {

Pentagon scaled(const InfoTriple& t, std::size_t n, double penalty) {
  const double k = 1.0 / static_cast<double>(n);
  return {std::max(0.0, t.i1 * k - penalty), std::max(0.0, t.i2 * k - penalty),
          std::max(0.0, t.i12 * k - penalty)};
}

InfoTriple min_triple(const PolicyWeights& w, const std::vector<CausalChannelLaw>& laws) {
  InfoTriple m{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
               std::numeric_limits<double>::infinity()};
  for (const auto& law : laws) {
    const InfoTriple t = info_triple(w, law);
    m.i1 = std::min(m.i1, t.i1);
    m.i2 = std::min(m.i2, t.i2);
    m.i12 = std::min(m.i12, t.i12);
  }
  return m;
}

double state_penalty(const FsMac& channel, std::size_t n) {
  return std::log2(static_cast<double>(channel.states().size())) / static_cast<double>(n);
}

/// Laws used by a variant: every initial state for inner and worst-case
/// outer, a single law otherwise.
std::vector<CausalChannelLaw> laws_for(const FsMac& channel, std::size_t n, Variant variant,
                                       const S0Mode& mode) {
  if (variant == Variant::Inner || mode.kind == S0Mode::Kind::Worst) {
    return per_state_laws(channel, n);
  }
  return {channel_causal_law(channel, mode, n)};
}

}  // namespace

Pentagon pentagon_inner(const InputPolicies& policies, const FsMac& channel, std::size_t n) {
  const BlockShape shape(channel.in1(), channel.in2(), channel.out(), n);
  const auto w = policy_weights(policies, shape);
  return scaled(min_triple(w, per_state_laws(channel, n)), n, state_penalty(channel, n));
}

Pentagon pentagon_outer(const InputPolicies& policies, const FsMac& channel, std::size_t n,
                        const S0Mode& mode) {
  const BlockShape shape(channel.in1(), channel.in2(), channel.out(), n);
  const auto w = policy_weights(policies, shape);
  return scaled(min_triple(w, laws_for(channel, n, Variant::Outer, mode)), n, 0.0);
}

namespace {

struct GridSetup {
  BlockShape shape;
  std::vector<std::vector<double>> w1, w2;
  std::vector<CausalChannelLaw> laws;
  double penalty = 0.0;
  std::string grid;
};

GridSetup setup(const FsMac& channel, const RegionRequest& r) {
  const BlockShape shape(channel.in1(), channel.in2(), channel.out(), r.n);
  const FeedbackFn f1 = r.f1.value_or(FeedbackFn::none(channel.out()));
  const FeedbackFn f2 = r.f2.value_or(FeedbackFn::none(channel.out()));
  if (!(f1.output() == channel.out()) || !(f2.output() == channel.out())) {
    throw InputError("feedback maps must be defined on the channel output alphabet");
  }
  const PolicyGrid g1(r.family, r.resolution, r.n, channel.in1(), f1.range());
  const PolicyGrid g2(r.family, r.resolution, r.n, channel.in2(), f2.range());
  const double pairs = static_cast<double>(g1.size()) * static_cast<double>(g2.size());
  if (pairs > static_cast<double>(r.max_pairs)) {
    throw SizingError(fmt::format("policy grid {} has {:.0f} pairs (limit {})", g1.describe(),
                                  pairs, r.max_pairs));
  }
  GridSetup s{shape, {}, {}, laws_for(channel, r.n, r.variant, r.s0),
              r.variant == Variant::Inner ? state_penalty(channel, r.n) : 0.0,
              g1.describe()};
  for (std::size_t k = 0; k < g1.size(); ++k) s.w1.push_back(kernel_weights(g1.kernel(k), f1, r.n));
  for (std::size_t k = 0; k < g2.size(); ++k) s.w2.push_back(kernel_weights(g2.kernel(k), f2, r.n));
  return s;
}

std::string s0_label(const RegionRequest& r) {
  return r.variant == Variant::Inner ? std::string("min") : r.s0.label();
}

}  // namespace

RateRegion region_union(const FsMac& channel, const RegionRequest& request) {
  const GridSetup s = setup(channel, request);
  // Each first-user kernel contributes the hull of its pentagon corners; the
  // hull of hulls equals the hull of the union.
  std::vector<std::vector<geom::Point>> partial(s.w1.size());
  parallel_for(s.w1.size(), request.threads, [&](std::size_t a) {
    std::vector<geom::Point> pts;
    PolicyWeights pw{s.shape, s.w1[a], {}};
    for (const auto& w2 : s.w2) {
      pw.w2 = w2;
      const Pentagon p = scaled(min_triple(pw, s.laws), request.n, s.penalty);
      for (const RatePoint& c : p.corners()) pts.push_back({c.r1, c.r2});
    }
    partial[a] = geom::convex_hull(pts).vertices();
  });
  std::vector<RatePoint> all;
  for (const auto& part : partial) {
    for (const auto& p : part) all.push_back({p.x, p.y});
  }
  RegionMetadata meta{request.n,          request.variant,
                      request.channel_id, s.grid,
                      s0_label(request),  s.w1.size() * s.w2.size()};
  return RateRegion::from_points(all, std::move(meta));
}

double grid_max_sum_rate(const FsMac& channel, const RegionRequest& request) {
  const GridSetup s = setup(channel, request);
  std::vector<double> best(s.w1.size(), 0.0);
  const double k = 1.0 / static_cast<double>(request.n);
  parallel_for(s.w1.size(), request.threads, [&](std::size_t a) {
    PolicyWeights pw{s.shape, s.w1[a], {}};
    for (const auto& w2 : s.w2) {
      pw.w2 = w2;
      double m = std::numeric_limits<double>::infinity();
      for (const auto& law : s.laws) m = std::min(m, sum_directed_info(pw, law));
      best[a] = std::max(best[a], std::max(0.0, m * k - s.penalty));
    }
  });
  return best.empty() ? 0.0 : *std::max_element(best.begin(), best.end());
}

SupAdditivityReport supadditivity_check(
    const std::vector<RateRegion>& regions,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs, double slack) {
  SupAdditivityReport report;
  report.slack = slack;
  for (const auto& [n, l] : pairs) {
    if (n == 0 || l == 0 || n + l > regions.size()) {
      throw InputError(fmt::format("sup-additivity pair ({}, {}) outside the {} regions", n, l,
                                   regions.size()));
    }
    const auto lhs = geom::minkowski_sum(
        geom::scale(regions[n - 1].polygon(), static_cast<double>(n)),
        geom::scale(regions[l - 1].polygon(), static_cast<double>(l)));
    const auto rhs = geom::scale(regions[n + l - 1].polygon(), static_cast<double>(n + l));
    SupAdditivityEntry e{n, l, geom::directed_hausdorff(lhs, rhs), false};
    e.holds = e.excess <= slack;
    report.all_hold = report.all_hold && e.holds;
    report.entries.push_back(e);
  }
  return report;
}

LimitEstimate limit_region_estimate(const std::vector<RateRegion>& regions) {
  if (regions.size() < 2) throw InputError("limit estimate needs at least two regions");
  std::vector<RatePoint> all;
  for (const auto& r : regions) {
    const auto v = r.vertices();
    all.insert(all.end(), v.begin(), v.end());
  }
  LimitEstimate out{RateRegion::from_points(all, regions.back().metadata()), {}};
  for (std::size_t k = 0; k + 1 < regions.size(); ++k) {
    out.gaps.push_back(hausdorff_distance(regions[k], regions[k + 1]));
  }
  return out;
}

}  // namespace dimac
