#include "dimac/dirinfo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "dimac/errors.hpp"
#include "dimac/pmf.hpp"
#include "dimac/policy_grid.hpp"

namespace dimac {

namespace {

double entropy(const JointLaw& joint, PrefixLengths l) {
  return PrefixMarginal(joint, l).entropy_bits();
}

double expectation(const JointLaw& joint, const CausalQuery& num, const CausalQuery& den) {
  const CausalTable tn(joint, num);
  const CausalTable td(joint, den);
  const BlockShape& s = joint.shape();
  double acc = 0.0;
  for (std::size_t c1 = 0; c1 < s.nx1(); ++c1) {
    for (std::size_t c2 = 0; c2 < s.nx2(); ++c2) {
      for (std::size_t cy = 0; cy < s.ny(); ++cy) {
        const double p = joint(c1, c2, cy);
        if (p <= 0.0) continue;
        const auto a = tn.evaluate(c1, c2, cy);
        const auto b = td.evaluate(c1, c2, cy);
        if (!a || !b || *a <= 0.0 || *b <= 0.0) continue;
        acc += p * std::log2(*a / *b);
      }
    }
  }
  return acc;
}

PrefixLengths with_source(Source source, std::size_t len, std::size_t y) {
  PrefixLengths l;
  l.y = y;
  if (source == Source::X1 || source == Source::X1X2) l.x1 = len;
  if (source == Source::X2 || source == Source::X1X2) l.x2 = len;
  return l;
}

std::vector<std::pair<Var, int>> given_of(Source source) {
  switch (source) {
    case Source::X1:
      return {{Var::X1, 0}};
    case Source::X2:
      return {{Var::X2, 0}};
    case Source::X1X2:
      break;
  }
  return {{Var::X1, 0}, {Var::X2, 0}};
}

}  // namespace

DirInfoBreakdown directed_info(const JointLaw& joint, Source source) {
  DirInfoBreakdown out;
  out.n = joint.n();
  for (std::size_t i = 1; i <= out.n; ++i) {
    const double v = entropy(joint, with_source(source, i, i - 1)) +
                     entropy(joint, {0, 0, i}) - entropy(joint, with_source(source, i, i)) -
                     entropy(joint, {0, 0, i - 1});
    out.per_step.push_back(v);
    out.total += v;
  }
  out.expectation_form = expectation(joint, {Var::Y, given_of(source)}, {Var::Y, {}});
  return out;
}

DirInfoBreakdown directed_info_cc(const JointLaw& joint, Source source) {
  if (source == Source::X1X2) {
    throw InputError("causally conditioned directed information needs a single source user");
  }
  const Source other = source == Source::X1 ? Source::X2 : Source::X1;
  DirInfoBreakdown out;
  out.n = joint.n();
  for (std::size_t i = 1; i <= out.n; ++i) {
    const double v = entropy(joint, with_source(Source::X1X2, i, i - 1)) +
                     entropy(joint, with_source(other, i, i)) -
                     entropy(joint, with_source(Source::X1X2, i, i)) -
                     entropy(joint, with_source(other, i, i - 1));
    out.per_step.push_back(v);
    out.total += v;
  }
  out.expectation_form = expectation(joint, {Var::Y, given_of(Source::X1X2)},
                                     {Var::Y, given_of(other)});
  return out;
}

double mutual_info(const JointLaw& joint, unsigned a, unsigned b, unsigned given) {
  const std::size_t n = joint.n();
  auto lengths = [n](unsigned mask) {
    return PrefixLengths{(mask & kX1) ? n : 0, (mask & kX2) ? n : 0, (mask & kY) ? n : 0};
  };
  if ((a & b) != 0 || (a & given) != 0 || (b & given) != 0) {
    throw InputError("mutual_info needs disjoint variable sets");
  }
  return conditional_mutual_info(joint, lengths(a | b | given), lengths(a | given),
                                 lengths(b | given), lengths(given));
}

double conditional_mutual_info(const JointLaw& joint, PrefixLengths abc, PrefixLengths ac,
                               PrefixLengths bc, PrefixLengths c) {
  return entropy(joint, ac) + entropy(joint, bc) - entropy(joint, abc) - entropy(joint, c);
}

double functional_I(const PolicyWeights& weights, const CausalChannelLaw& law, Source source) {
  const BlockShape& s = law.shape();
  if (!(weights.shape == s)) throw InputError("policy weights and law disagree on shape");
  const std::size_t n1 = s.nx1(), n2 = s.nx2(), ny = s.ny();
  // Denominator: the law averaged over the source user's inputs.
  std::vector<double> den;
  switch (source) {
    case Source::X1:
      den.assign(n2 * ny, 0.0);
      for (std::size_t c1 = 0; c1 < n1; ++c1)
        for (std::size_t c2 = 0; c2 < n2; ++c2)
          for (std::size_t cy = 0; cy < ny; ++cy)
            den[c2 * ny + cy] += weights.q1(c1, cy) * law(c1, c2, cy);
      break;
    case Source::X2:
      den.assign(n1 * ny, 0.0);
      for (std::size_t c1 = 0; c1 < n1; ++c1)
        for (std::size_t c2 = 0; c2 < n2; ++c2)
          for (std::size_t cy = 0; cy < ny; ++cy)
            den[c1 * ny + cy] += weights.q2(c2, cy) * law(c1, c2, cy);
      break;
    case Source::X1X2:
      den.assign(ny, 0.0);
      for (std::size_t c1 = 0; c1 < n1; ++c1)
        for (std::size_t c2 = 0; c2 < n2; ++c2)
          for (std::size_t cy = 0; cy < ny; ++cy)
            den[cy] += weights.q1(c1, cy) * weights.q2(c2, cy) * law(c1, c2, cy);
      break;
  }
  double acc = 0.0;
  for (std::size_t c1 = 0; c1 < n1; ++c1) {
    for (std::size_t c2 = 0; c2 < n2; ++c2) {
      for (std::size_t cy = 0; cy < ny; ++cy) {
        const double p = law(c1, c2, cy);
        const double w = weights.q1(c1, cy) * weights.q2(c2, cy) * p;
        if (w <= 0.0) continue;
        const double d = source == Source::X1   ? den[c2 * ny + cy]
                         : source == Source::X2 ? den[c1 * ny + cy]
                                                : den[cy];
        acc += w * std::log2(p / d);
      }
    }
  }
  return acc;
}

double functional_I(const InputPolicies& policies, const CausalChannelLaw& law, Source source) {
  return functional_I(policy_weights(policies, law.shape()), law, source);
}

double sum_directed_info(const PolicyWeights& weights, const CausalChannelLaw& law) {
  return functional_I(weights, law, Source::X1X2);
}

InfoTriple info_triple(const PolicyWeights& weights, const CausalChannelLaw& law) {
  return {functional_I(weights, law, Source::X1), functional_I(weights, law, Source::X2),
          functional_I(weights, law, Source::X1X2)};
}

StateConditionedInfo directed_info_given_state(const InputPolicies& policies,
                                               const FsMac& channel, Source source,
                                               std::span<const double> s0_weights) {
  const std::size_t n = policies.depth();
  const BlockShape shape(channel.in1(), channel.in2(), channel.out(), n);
  const PolicyWeights w = policy_weights(policies, shape);
  // The per-user quantities are causally conditioned on the other user.
  auto value = [&](const CausalChannelLaw& law) { return functional_I(w, law, source); };
  StateConditionedInfo out;
  out.weights.assign(s0_weights.begin(), s0_weights.end());
  const auto laws = per_state_laws(channel, n);
  for (const auto& law : laws) out.per_state.push_back(value(law));
  for (std::size_t s = 0; s < laws.size(); ++s) out.conditioned += out.weights[s] * out.per_state[s];
  out.mixture = value(channel_causal_law(channel, s0_weights, n, "weighted"));
  out.min = *std::min_element(out.per_state.begin(), out.per_state.end());
  out.max = *std::max_element(out.per_state.begin(), out.per_state.end());
  out.state_entropy = entropy_bits(out.weights);
  return out;
}

StateConditionedInfo directed_info_given_state(const InputPolicies& policies,
                                               const FsMac& channel, Source source) {
  return directed_info_given_state(policies, channel, source,
                                   initial_state_distribution(channel));
}

FactorizationResidual factorization_residual(const JointLaw& joint) {
  const BlockShape& s = joint.shape();
  FactorizationResidual r;
  {
    const JointLaw& j = joint;
    const CausalTable q(j, {Var::X1, {{Var::Y, 1}}});
    const CausalTable p(j, {Var::Y, {{Var::X1, 0}}});
    // P(x1^n, y^n) by direct marginalization.
    std::vector<double> m(s.nx1() * s.ny(), 0.0);
    for (std::size_t c1 = 0; c1 < s.nx1(); ++c1)
      for (std::size_t c2 = 0; c2 < s.nx2(); ++c2)
        for (std::size_t cy = 0; cy < s.ny(); ++cy) m[c1 * s.ny() + cy] += j(c1, c2, cy);
    for (std::size_t c1 = 0; c1 < s.nx1(); ++c1) {
      for (std::size_t cy = 0; cy < s.ny(); ++cy) {
        const auto a = q.evaluate(c1, 0, cy);
        const auto b = p.evaluate(c1, 0, cy);
        const double rhs = a && b ? *a * *b : 0.0;
        r.plain = std::max(r.plain, std::abs(m[c1 * s.ny() + cy] - rhs));
      }
    }
  }
  {
    // P(x1^n, y^n || x2^n) = P / Q(x2 || y^{n-1}, x1^{n-1}) against
    // Q(x1 || y^{n-1}, x2^n) P(y^n || x1^n, x2^n).
    const CausalTable q2(joint, {Var::X2, {{Var::Y, 1}, {Var::X1, 1}}});
    const CausalTable q1(joint, {Var::X1, {{Var::Y, 1}, {Var::X2, 0}}});
    const CausalTable p(joint, {Var::Y, {{Var::X1, 0}, {Var::X2, 0}}});
    for (std::size_t c1 = 0; c1 < s.nx1(); ++c1) {
      for (std::size_t c2 = 0; c2 < s.nx2(); ++c2) {
        for (std::size_t cy = 0; cy < s.ny(); ++cy) {
          const auto d = q2.evaluate(c1, c2, cy);
          if (!d || *d <= 0.0) continue;
          const double lhs = joint(c1, c2, cy) / *d;
          const auto a = q1.evaluate(c1, c2, cy);
          const auto b = p.evaluate(c1, c2, cy);
          const double rhs = a && b ? *a * *b : 0.0;
          r.conditioned = std::max(r.conditioned, std::abs(lhs - rhs));
        }
      }
    }
  }
  return r;
}

ZeroRegionVerdict zero_region_check(const FsMac& channel, std::size_t n,
                                    const ZeroCheckOptions& options) {
  const BlockShape shape(channel.in1(), channel.in2(), channel.out(), n);
  const auto laws = per_state_laws(channel, n);
  ZeroRegionVerdict v;

  const InputPolicies uniform =
      InputPolicies::uniform(channel.in1(), channel.in2(), channel.out(), n);
  const PolicyWeights uw = policy_weights(uniform, shape);
  for (const auto& law : laws) {
    v.uniform_value = std::max(v.uniform_value, sum_directed_info(uw, law));
    for (std::size_t c1 = 0; c1 < shape.nx1(); ++c1) {
      for (std::size_t c2 = 0; c2 < shape.nx2(); ++c2) {
        for (std::size_t cy = 0; cy < shape.ny(); ++cy) {
          v.max_deviation = std::max(v.max_deviation, std::abs(law(c1, c2, cy) - law(0, 0, cy)));
        }
      }
    }
  }
  v.zero = v.uniform_value <= options.zero_tol;

  const FeedbackFn fb = FeedbackFn::perfect(channel.out());
  const PolicyGrid g1(PolicyFamily::FeedbackDriven, options.resolution, n, channel.in1(),
                      fb.range());
  const PolicyGrid g2(PolicyFamily::FeedbackDriven, options.resolution, n, channel.in2(),
                      fb.range());
  const double pairs = static_cast<double>(g1.size()) * static_cast<double>(g2.size());
  if (pairs > static_cast<double>(options.max_pairs)) {
    throw SizingError(fmt::format("feedback grid has {:.0f} policy pairs (limit {})", pairs,
                                  options.max_pairs));
  }
  std::vector<std::vector<double>> w1, w2;
  for (std::size_t k = 0; k < g1.size(); ++k) w1.push_back(kernel_weights(g1.kernel(k), fb, n));
  for (std::size_t k = 0; k < g2.size(); ++k) w2.push_back(kernel_weights(g2.kernel(k), fb, n));
  PolicyWeights pw{shape, {}, {}};
  for (const auto& law : laws) {
    for (std::size_t a = 0; a < w1.size(); ++a) {
      pw.w1 = w1[a];
      for (std::size_t b = 0; b < w2.size(); ++b) {
        pw.w2 = w2[b];
        v.grid_max = std::max(v.grid_max, sum_directed_info(pw, law));
        ++v.grid_points;
        if (options.early_exit_above > 0.0 && v.grid_max > options.early_exit_above) return v;
      }
    }
  }
  return v;
}

double noise_block_entropy(const NoiseChain& noise, std::span<const double> s0_weights,
                           std::size_t n) {
  noise.validate();
  const std::size_t ns = noise.chain.states;
  if (s0_weights.size() != ns) throw InputError("noise state weights have the wrong size");
  require_cells(std::pow(static_cast<double>(noise.arity), static_cast<double>(n)),
                "noise block entropy");
  std::vector<std::vector<double>> alpha(n + 1, std::vector<double>(ns, 0.0));
  alpha[0].assign(s0_weights.begin(), s0_weights.end());
  double h = 0.0;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == n) {
      double p = 0.0;
      for (double a : alpha[n]) p += a;
      h += neg_xlog2x(p);
      return;
    }
    for (std::size_t v = 0; v < noise.arity; ++v) {
      auto& next = alpha[i + 1];
      std::fill(next.begin(), next.end(), 0.0);
      double mass = 0.0;
      for (std::size_t s = 0; s < ns; ++s) {
        const double e = alpha[i][s] * noise.emit(s, v);
        if (e == 0.0) continue;
        mass += e;
        for (std::size_t t = 0; t < ns; ++t) next[t] += e * noise.chain.at(s, t);
      }
      if (mass > 0.0) walk(i + 1);
    }
  };
  walk(0);
  return h;
}

EntropyRateBounds entropy_rate_bounds(const NoiseChain& noise, std::size_t n) {
  if (n < 1) throw InputError("entropy rate bounds need n >= 1");
  const std::vector<double> pi = stationary_distribution(noise.chain);
  const std::size_t ns = noise.chain.states;
  auto conditioned = [&](std::size_t len) {
    if (len == 0) return 0.0;
    double h = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
      if (pi[s] == 0.0) continue;
      std::vector<double> e(ns, 0.0);
      e[s] = 1.0;
      h += pi[s] * noise_block_entropy(noise, e, len);
    }
    return h;
  };
  auto plain = [&](std::size_t len) {
    return len == 0 ? 0.0 : noise_block_entropy(noise, pi, len);
  };
  return {conditioned(n) - conditioned(n - 1), plain(n) - plain(n - 1)};
}

SumRateIdentity ge_sumrate_identity_check(const FsMac& channel, const NoiseChain& noise,
                                          std::size_t n) {
  const FsMac reference = additive_modq_mac(2, noise);
  if (!(channel.states() == reference.states()) || !(channel.in1() == reference.in1()) ||
      !(channel.in2() == reference.in2()) || !(channel.out() == reference.out())) {
    throw InputError("channel is not a binary additive MAC driven by the given noise");
  }
  for (std::size_t k = 0; k < reference.kernel().size(); ++k) {
    if (std::abs(channel.kernel()[k] - reference.kernel()[k]) > 1e-12) {
      throw InputError("channel is not a binary additive MAC driven by the given noise");
    }
  }
  const std::vector<double> pi = stationary_distribution(noise.chain);
  const BlockShape shape(channel.in1(), channel.in2(), channel.out(), n);
  const auto law = channel_causal_law(channel, pi, n, "stationary");
  const auto w = policy_weights(
      InputPolicies::uniform(channel.in1(), channel.in2(), channel.out(), n), shape);
  SumRateIdentity r;
  r.directed_info = sum_directed_info(w, law);
  r.noise_entropy = noise_block_entropy(noise, pi, n);
  r.residual = std::abs(r.directed_info - (static_cast<double>(n) - r.noise_entropy));
  return r;
}

}  // namespace dimac
