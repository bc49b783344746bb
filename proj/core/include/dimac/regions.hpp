#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dimac/channels.hpp"
#include "dimac/geometry.hpp"
#include "dimac/joint_law.hpp"
#include "dimac/policy_grid.hpp"

namespace dimac {

struct RatePoint {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// Bounds on R1, R2 and R1 + R2 for one input-policy pair, bits per use.
struct Pentagon {
  double c1 = 0.0;
  double c2 = 0.0;
  double c12 = 0.0;

  /// The (up to) two dominant corners plus the axis intercepts.
  std::vector<RatePoint> corners() const;
  bool contains(RatePoint p, double slack = 0.0) const;
};

enum class Variant { Inner, Outer };
std::string to_string(Variant v);
Variant parse_variant(const std::string& text);

struct RegionMetadata {
  std::size_t n = 0;
  Variant variant = Variant::Outer;
  std::string channel_id;
  std::string grid;
  std::string s0;
  std::size_t pairs = 0;
};

/// Down-closed convex rate set in the nonnegative quadrant. Vertices run
/// counterclockwise starting at the origin.
class RateRegion {
 public:
  RateRegion();
  /// Convex hull of the points, their axis projections and the origin.
  static RateRegion from_points(const std::vector<RatePoint>& points, RegionMetadata meta = {});
  static RateRegion from_pentagon(const Pentagon& p, RegionMetadata meta = {});

  const geom::ConvexPolygon& polygon() const noexcept { return poly_; }
  std::vector<RatePoint> vertices() const;
  const RegionMetadata& metadata() const noexcept { return meta_; }
  RegionMetadata& metadata() noexcept { return meta_; }

  /// max R1 + R2 over the region.
  double max_sum_rate() const;
  double max_r1() const;
  double max_r2() const;
  /// Distance from p to the region (0 inside).
  double distance(RatePoint p) const;

 private:
  explicit RateRegion(geom::ConvexPolygon poly, RegionMetadata meta);
  geom::ConvexPolygon poly_;
  RegionMetadata meta_;
};

RateRegion minkowski_sum(const RateRegion& a, const RateRegion& b);
RateRegion scale_region(const RateRegion& a, double c);
RateRegion convex_hull(const std::vector<RatePoint>& points);
double hausdorff_distance(const RateRegion& a, const RateRegion& b);

/// min over s0 of I(...|s0)/n minus log2|S|/n, clamped at zero.
Pentagon pentagon_inner(const InputPolicies& policies, const FsMac& channel, std::size_t n);
/// I(...)/n under the declared initial-state convention, clamped at zero.
/// S0Mode::worst() takes the min over s0 for each bound.
Pentagon pentagon_outer(const InputPolicies& policies, const FsMac& channel, std::size_t n,
                        const S0Mode& mode);

struct RegionRequest {
  std::size_t n = 1;
  PolicyFamily family = PolicyFamily::Iid;
  std::size_t resolution = 16;
  std::optional<FeedbackFn> f1;  // nullopt: no feedback
  std::optional<FeedbackFn> f2;
  Variant variant = Variant::Outer;
  S0Mode s0 = S0Mode::stationary();
  std::size_t max_pairs = 10'000'000;
  std::size_t threads = 1;
  std::string channel_id;
};

/// Convex hull of all pentagons over a policy grid: an inner approximation of
/// the union (limited by the grid). Throws SizingError above max_pairs.
RateRegion region_union(const FsMac& channel, const RegionRequest& request);

/// Largest (1/n) I((X1,X2)^n -> Y^n) over the grid, with the same law
/// conventions as region_union.
double grid_max_sum_rate(const FsMac& channel, const RegionRequest& request);

/// Result for one tested (n, l) pair.
struct SupAdditivityEntry {
  std::size_t n = 0;
  std::size_t l = 0;
  /// Largest distance from a point of n R_n + l R_l to (n+l) R_{n+l}.
  double excess = 0.0;
  bool holds = false;
};

struct SupAdditivityReport {
  double slack = 0.0;
  std::vector<SupAdditivityEntry> entries;
  bool all_hold = true;
};

/// `regions[k]` is R_{k+1}. Checks (n+l) R_{n+l} contains n R_n + l R_l up to
/// `slack` for each requested pair.
SupAdditivityReport supadditivity_check(const std::vector<RateRegion>& regions,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                        double slack);

struct LimitEstimate {
  RateRegion limit;
  /// d(R_k, R_{k+1}) for consecutive regions.
  std::vector<double> gaps;
};

/// Closure-of-union hull plus consecutive Hausdorff gaps.
LimitEstimate limit_region_estimate(const std::vector<RateRegion>& regions);

}  // namespace dimac
