#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "dimac/dirinfo.hpp"
#include "dimac/errors.hpp"
#include "dimac/exponents.hpp"
#include "dimac/random_instances.hpp"
#include "dimac/regions.hpp"
#include "output.hpp"

namespace dimac::cli {

namespace {

using json = nlohmann::json;

/// Largest observed violation of one invariant against its tolerance.
struct Check {
  std::string name;
  double worst = 0.0;
  double tol = 0.0;
  std::size_t instances = 0;

  void observe(double v) {
    worst = std::max(worst, v);
    ++instances;
  }
  bool pass() const { return worst <= tol; }
};

std::vector<double> rho_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 20; ++k) g.push_back(k / 20.0);
  return g;
}

std::vector<Check> identity_suite(std::mt19937_64& rng, std::size_t count) {
  Check l1{"chain_rule_residual", 0.0, 1e-10};
  Check l2{"state_knowledge_excess", 0.0, 1e-10};
  Check l3{"functional_vs_directed", 0.0, 1e-10};
  Check l4{"no_feedback_mutual_info", 0.0, 1e-10};
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = 1 + k % 3;
    const FsMac ch = random_fsmac(2, 2, 2, 2, rng);
    const auto fb = random_policies(ch, n, true, rng);
    const auto law = channel_causal_law(ch, S0Mode::given(k % 2), n);
    const JointLaw j = joint_law(fb, law);
    const auto r1 = factorization_residual(j);
    l1.observe(std::max(r1.plain, r1.conditioned));

    const auto w = random_pmf(2, rng);
    double excess = -std::numeric_limits<double>::infinity();
    for (Source s : {Source::X1, Source::X2, Source::X1X2}) {
      const auto r = directed_info_given_state(fb, ch, s, w);
      excess = std::max(excess, std::abs(r.mixture - r.conditioned) - r.state_entropy);
    }
    l2.observe(std::max(0.0, excess));

    l3.observe(std::max(
        std::abs(functional_I(fb, law, Source::X1) - directed_info_cc(j, Source::X1).total),
        std::abs(functional_I(fb, law, Source::X2) - directed_info_cc(j, Source::X2).total)));

    const auto nf = random_policies(ch, n, false, rng);
    const JointLaw jn = joint_law(nf, law);
    l4.observe(std::max(
        std::abs(mutual_info(jn, kX1, kY, kX2) - directed_info_cc(jn, Source::X1).total),
        std::abs(mutual_info(jn, kX2, kY, kX1) - directed_info_cc(jn, Source::X2).total)));
  }
  return {l1, l2, l3, l4};
}

std::vector<Check> exponent_suite(std::mt19937_64& rng, std::size_t count) {
  Check e0{"E_at_rho_zero", 0.0, 0.0};
  Check slope{"slope_at_zero_vs_directed_info", 0.0, 1e-4};
  Check mono{"E_nondecreasing_in_rho", 0.0, 1e-10};
  Check concat{"F_concatenation_superadditive", 0.0, 1e-10};
  const auto grid = rho_grid();
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t N = 1 + k % 2;
    const FsMac ch = random_fsmac(2, 2, 2, 2, rng);
    const auto pol = random_policies(ch, N, true, rng);
    const auto twice = concatenate(pol, pol);
    for (ErrorType t : {ErrorType::One, ErrorType::Two, ErrorType::Three}) {
      const auto r = exponent_shape(t, pol, ch, N, k % 2, grid);
      e0.observe(std::abs(r.e_at_zero));
      slope.observe(std::abs(r.slope_at_zero - r.info_over_N));
      mono.observe(std::max(0.0, -r.min_increment));
      double gap = 0.0;
      for (double rho : grid) {
        gap = std::max(gap, gallager_F(t, rho, pol, ch, N) - gallager_F(t, rho, twice, ch, 2 * N));
      }
      concat.observe(gap);
    }
  }
  return {e0, slope, mono, concat};
}

RateRegion quarter_disc(double radius, std::size_t segments) {
  std::vector<RatePoint> pts;
  for (std::size_t k = 0; k <= segments; ++k) {
    const double a = std::numbers::pi / 2.0 * static_cast<double>(k) / static_cast<double>(segments);
    pts.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return convex_hull(pts);
}

std::vector<Check> geometry_suite(std::mt19937_64& rng, std::size_t count) {
  Check hull{"hull_contains_inputs", 0.0, 1e-12};
  Check mink{"minkowski_vs_hull_of_sums", 0.0, 1e-9};
  Check symm{"hausdorff_symmetry_and_triangle", 0.0, 1e-12};
  Check sup{"quarter_disc_superadditivity", 0.0, 1e-12};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto cloud = [&](std::size_t size) {
    std::vector<geom::Point> p;
    for (std::size_t k = 0; k < size; ++k) p.push_back({u(rng), u(rng)});
    return p;
  };
  for (std::size_t k = 0; k < count; ++k) {
    const auto a = cloud(4 + k % 9);
    const auto b = cloud(4 + k % 7);
    const auto c = cloud(5);
    const auto ha = geom::convex_hull(a);
    const auto hb = geom::convex_hull(b);
    const auto hc = geom::convex_hull(c);
    double outside = 0.0;
    for (const auto& p : a) outside = std::max(outside, geom::distance(p, ha));
    for (const auto& v : ha.vertices()) {
      const bool listed = std::find(a.begin(), a.end(), v) != a.end();
      if (!listed) outside = std::max(outside, 1.0);
    }
    hull.observe(outside);

    std::vector<geom::Point> sums;
    for (const auto& p : a) {
      for (const auto& q : b) sums.push_back(p + q);
    }
    const auto fast = geom::minkowski_sum(ha, hb);
    const auto slow = geom::convex_hull(sums);
    double err = geom::hausdorff_distance(fast, slow);
    if (fast.size() != slow.size()) err = std::max(err, 1.0);
    mink.observe(err);

    const double ab = geom::hausdorff_distance(ha, hb);
    const double ba = geom::hausdorff_distance(hb, ha);
    const double tri = ab - (geom::hausdorff_distance(ha, hc) + geom::hausdorff_distance(hc, hb));
    symm.observe(std::max({std::abs(ab - ba), tri, geom::hausdorff_distance(ha, ha)}));
  }

  std::vector<RateRegion> seq;
  for (std::size_t n = 1; n <= 8; ++n) {
    seq.push_back(quarter_disc(1.0 - 1.0 / static_cast<double>(n), 64));
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t n = 1; n < seq.size(); ++n) {
    for (std::size_t l = 1; n + l <= seq.size(); ++l) pairs.push_back({n, l});
  }
  for (const auto& e : supadditivity_check(seq, pairs, 1e-12).entries) {
    sup.observe(std::max(0.0, e.excess));
  }
  return {hull, mink, symm, sup};
}

std::vector<Check> zero_suite(std::mt19937_64& rng, std::size_t count) {
  Check uniform{"uniform_input_value", 0.0, 1e-9};
  Check law{"law_input_independence", 0.0, 1e-9};
  Check grid{"feedback_grid_max", 0.0, 1e-9};
  ZeroCheckOptions opt;
  opt.resolution = 4;
  opt.zero_tol = 1e-9;
  for (std::size_t k = 0; k < count; ++k) {
    const FsMac ch = random_useless_fsmac(2, 2, 2, 2, rng);
    const auto v = zero_region_check(ch, 1 + k % 2, opt);
    uniform.observe(v.uniform_value);
    law.observe(v.max_deviation);
    grid.observe(v.grid_max);
  }
  return {uniform, law, grid};
}

}  // namespace

int cmd_verify(const VerifyOptions& o) {
  RunManifest manifest("verify");
  manifest.parameter("suite", o.suite);
  manifest.parameter("count", o.count);
  manifest.seed(o.seed);
  std::mt19937_64 rng(o.seed);

  std::vector<Check> checks;
  if (o.suite == "lemmas") {
    checks = identity_suite(rng, o.count);
  } else if (o.suite == "exponents") {
    checks = exponent_suite(rng, o.count);
  } else if (o.suite == "geometry") {
    checks = geometry_suite(rng, o.count);
  } else if (o.suite == "zero") {
    checks = zero_suite(rng, o.count);
  } else {
    throw InputError(fmt::format("unknown suite '{}' (lemmas|exponents|geometry|zero)", o.suite));
  }

  bool all = true;
  json list = json::array();
  for (const auto& c : checks) {
    all = all && c.pass();
    list.push_back({{"name", c.name},
                    {"instances", c.instances},
                    {"worst", c.worst},
                    {"tolerance", c.tol},
                    {"pass", c.pass()}});
  }
  const json report = {{"suite", o.suite},
                       {"seed", o.seed},
                       {"count", o.count},
                       {"checks", list},
                       {"pass", all}};
  emit(o.out, report.dump(2) + "\n");
  emit_manifest(o.out, manifest);
  return all ? 0 : 1;
}

}  // namespace dimac::cli
