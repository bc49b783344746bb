#include "dimac/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "dimac/dirinfo.hpp"
#include "dimac/errors.hpp"

namespace dimac {

namespace {

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InputError(fmt::format("rho {} outside [0, 1]", rho));
}

/// log2 sum 2^{t_k} over finite entries; -inf when all are -inf.
double log2_sum_exp2(const std::vector<double>& terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (double t : terms) m = std::max(m, t);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double t : terms) s += std::exp2(t - m);
  return m + std::log2(s);
}

}  // namespace

double gallager_log2_sum(ErrorType type, double rho, const PolicyWeights& weights,
                         const CausalChannelLaw& law) {
  check_rho(rho);
  const BlockShape& s = law.shape();
  if (!(weights.shape == s)) throw InputError("policy weights and law disagree on shape");
  const double inv = 1.0 / (1.0 + rho);
  const double outer = 1.0 + rho;
  const std::size_t n1 = s.nx1(), n2 = s.nx2(), ny = s.ny();
  // The tensor is walked in storage order; inner sums are accumulated per
  // (outer input, output) slot.
  const bool one = type == ErrorType::One;
  const std::size_t slots = type == ErrorType::Three ? ny : (one ? n2 : n1) * ny;
  std::vector<double> inner(slots, 0.0);
  const double* p = law.tensor().data();
  for (std::size_t c1 = 0; c1 < n1; ++c1) {
    const double* q1 = weights.w1.data() + c1 * ny;
    for (std::size_t c2 = 0; c2 < n2; ++c2) {
      const double* q2 = weights.w2.data() + c2 * ny;
      double* acc = inner.data();
      if (type == ErrorType::One) acc += c2 * ny;
      if (type == ErrorType::Two) acc += c1 * ny;
      for (std::size_t cy = 0; cy < ny; ++cy, ++p) {
        if (*p <= 0.0) continue;
        double w = std::pow(*p, inv);
        if (type != ErrorType::Two) w *= q1[cy];
        if (type != ErrorType::One) w *= q2[cy];
        acc[cy] += w;
      }
    }
  }
  std::vector<double> terms;
  for (std::size_t k = 0; k < slots; ++k) {
    const std::size_t c = k / ny, cy = k % ny;
    const double prefix =
        type == ErrorType::Three ? 1.0 : (one ? weights.q2(c, cy) : weights.q1(c, cy));
    if (prefix > 0.0 && inner[k] > 0.0) {
      terms.push_back(std::log2(prefix) + outer * std::log2(inner[k]));
    }
  }
  return log2_sum_exp2(terms);
}

double gallager_E(ErrorType type, double rho, const PolicyWeights& weights,
                  const CausalChannelLaw& law) {
  check_rho(rho);
  if (rho == 0.0) return 0.0;
  return -gallager_log2_sum(type, rho, weights, law) / static_cast<double>(law.n());
}

double gallager_E(ErrorType type, double rho, const InputPolicies& policies,
                  const CausalChannelLaw& law) {
  return gallager_E(type, rho, policy_weights(policies, law.shape()), law);
}

double gallager_F(ErrorType type, double rho, const InputPolicies& policies,
                  const FsMac& channel, std::size_t N) {
  const BlockShape shape(channel.in1(), channel.in2(), channel.out(), N);
  const PolicyWeights w = policy_weights(policies, shape);
  double m = std::numeric_limits<double>::infinity();
  for (const auto& law : per_state_laws(channel, N)) m = std::min(m, gallager_E(type, rho, w, law));
  return m - rho * std::log2(static_cast<double>(channel.states().size())) /
                 static_cast<double>(N);
}

double error_bound(std::size_t N, double rate, double rho, double F, std::size_t num_states) {
  check_rho(rho);
  return static_cast<double>(num_states) *
         std::exp2(-static_cast<double>(N) * (F - rho * rate));
}

std::vector<double> default_rho_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 20; ++k) g.push_back(k / 20.0);
  return g;
}

ExponentEval exponent_curve(ErrorType type, const InputPolicies& policies, const FsMac& channel,
                            std::size_t N, const std::vector<double>& rho_grid) {
  const BlockShape shape(channel.in1(), channel.in2(), channel.out(), N);
  const PolicyWeights w = policy_weights(policies, shape);
  const auto laws = per_state_laws(channel, N);
  const double log_s = std::log2(static_cast<double>(channel.states().size()));
  ExponentEval out{type, N, rho_grid, {}, {}};
  for (double rho : rho_grid) {
    std::vector<double> row;
    for (const auto& law : laws) row.push_back(gallager_E(type, rho, w, law));
    out.F.push_back(*std::min_element(row.begin(), row.end()) -
                    rho * log_s / static_cast<double>(N));
    out.E.push_back(std::move(row));
  }
  return out;
}

AchievabilityVerdict exponent_achievability(double r1, double r2, const InputPolicies& policies,
                                            const FsMac& channel, std::size_t n,
                                            const std::vector<double>& rho_grid) {
  if (r1 < 0.0 || r2 < 0.0) throw InputError("rates must be nonnegative");
  AchievabilityVerdict v;
  v.vacuous[0] = r1 == 0.0;
  v.vacuous[1] = r2 == 0.0;
  v.vacuous[2] = r1 == 0.0 || r2 == 0.0;
  const double rates[3] = {r1, r2, r1 + r2};
  if (v.vacuous[0] && v.vacuous[1] && v.vacuous[2]) {
    v.certified = true;
    return v;
  }
  ExponentEval curves[3];
  for (int i = 0; i < 3; ++i) {
    if (!v.vacuous[i]) {
      curves[i] = exponent_curve(static_cast<ErrorType>(i + 1), policies, channel, n, rho_grid);
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rho_grid.size(); ++k) {
    double worst = std::numeric_limits<double>::infinity();
    double margins[3] = {0.0, 0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      if (v.vacuous[i]) continue;
      margins[i] = curves[i].F[k] - rho_grid[k] * rates[i];
      worst = std::min(worst, margins[i]);
    }
    if (worst > best) {
      best = worst;
      v.rho = rho_grid[k];
      std::copy(margins, margins + 3, v.margins);
    }
  }
  v.certified = best > 0.0;
  return v;
}

ExponentShapeReport exponent_shape(ErrorType type, const InputPolicies& policies,
                                   const FsMac& channel, std::size_t N, std::size_t s0,
                                   const std::vector<double>& rho_grid) {
  const auto law = channel_causal_law(channel, S0Mode::given(s0), N);
  const PolicyWeights w = policy_weights(policies, law.shape());
  ExponentShapeReport r;
  r.e_at_zero = gallager_E(type, 0.0, w, law);
  const double h = 1e-5;
  const double d1 = (gallager_E(type, h, w, law) - r.e_at_zero) / h;
  const double d2 = (gallager_E(type, h / 2, w, law) - r.e_at_zero) / (h / 2);
  r.slope_at_zero = 2.0 * d2 - d1;
  const Source source = type == ErrorType::One   ? Source::X1
                        : type == ErrorType::Two ? Source::X2
                                                 : Source::X1X2;
  r.info_over_N = functional_I(w, law, source) / static_cast<double>(N);
  r.slope_matches = std::abs(r.slope_at_zero - r.info_over_N) <= 1e-4;

  std::vector<double> e;
  for (double rho : rho_grid) e.push_back(gallager_E(type, rho, w, law));
  r.nondecreasing = true;
  r.min_increment = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < e.size(); ++k) {
    const double d = e[k] - e[k - 1];
    r.min_increment = std::min(r.min_increment, d);
    if (d < -1e-10) r.nondecreasing = false;
  }
  if (e.size() < 2) r.min_increment = 0.0;
  for (std::size_t k = 1; k + 1 < e.size(); ++k) {
    const double a = rho_grid[k] - rho_grid[k - 1];
    const double b = rho_grid[k + 1] - rho_grid[k];
    const double second = (e[k + 1] - e[k]) / b - (e[k] - e[k - 1]) / a;
    if (second > 1e-12) ++r.convex_steps;
    if (second < -1e-12) ++r.concave_steps;
  }
  return r;
}

InputPolicies concatenate(const InputPolicies& first, const InputPolicies& second) {
  if (!(first.f1 == second.f1) || !(first.f2 == second.f2)) {
    throw InputError("concatenated policy blocks must share their feedback maps");
  }
  return {first.q1.then(second.q1), first.q2.then(second.q2), first.f1, first.f2};
}

double F_supadditivity_margin(ErrorType type, const InputPolicies& block_n,
                              const InputPolicies& block_l, const FsMac& channel, double rho) {
  const std::size_t n = block_n.depth();
  const std::size_t l = block_l.depth();
  const double fn = gallager_F(type, rho, block_n, channel, n);
  const double fl = gallager_F(type, rho, block_l, channel, l);
  const double fnl = gallager_F(type, rho, concatenate(block_n, block_l), channel, n + l);
  return fnl - (static_cast<double>(n) * fn + static_cast<double>(l) * fl) /
                   static_cast<double>(n + l);
}

}  // namespace dimac
