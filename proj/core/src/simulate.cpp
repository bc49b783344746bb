#include "dimac/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "dimac/errors.hpp"
#include "dimac/exponents.hpp"
#include "dimac/parallel.hpp"

namespace dimac {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_index(std::span<const double> pmf, double u) {
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    if (pmf[k] <= 0.0) continue;
    acc += pmf[k];
    last = k;
    if (u < acc) return k;
  }
  return last;
}

namespace {

double hash_uniform(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

std::uint64_t node_hash(std::uint64_t seed, std::size_t i, std::span<const Symbol> z,
                        bool keyed_by_z) {
  std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i) + 1));
  if (!keyed_by_z) return h;
  for (std::size_t k = 0; k < i; ++k) {
    h = splitmix64(h ^ (static_cast<std::uint64_t>(z[k]) + 0x5851f42d4c957f2dULL));
  }
  return h;
}

}  // namespace

std::uint64_t CodeTree::label_hash(std::size_t i, std::span<const Symbol> z) const {
  return node_hash(seed_, i, uses_feedback_ ? z : std::span<const Symbol>(), uses_feedback_);
}

std::vector<Symbol> CodeTree::path(std::span<const Symbol> z) const {
  const std::size_t n = depth();
  if (n > 0 && z.size() + 1 < n) throw InputError("feedback path shorter than the tree depth");
  std::vector<Symbol> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = kernel_->row(i, x, z);
    x[i] = static_cast<Symbol>(sample_index(row, hash_uniform(label_hash(i, z))));
  }
  return x;
}

Symbol CodeTree::symbol(std::size_t i, std::span<const Symbol> past_z) const {
  if (i >= depth()) throw InputError(fmt::format("tree time {} beyond depth {}", i, depth()));
  if (past_z.size() < i) throw InputError("feedback history too short");
  std::vector<Symbol> x(i + 1);
  for (std::size_t j = 0; j <= i; ++j) {
    const auto row = kernel_->row(j, x, past_z);
    x[j] = static_cast<Symbol>(sample_index(row, hash_uniform(label_hash(j, past_z))));
  }
  return x[i];
}

double CodeBook::rate(std::size_t N) const {
  return std::log2(static_cast<double>(trees.size())) / static_cast<double>(N);
}

CodeBook sample_code_trees(const CausalKernel& concatenated, std::size_t M,
                           std::mt19937_64& rng) {
  if (M == 0) throw InputError("a codebook needs at least one message");
  CodeBook book;
  for (std::size_t m = 0; m < M; ++m) book.trees.emplace_back(&concatenated, rng());
  return book;
}

Trajectory transmit(const FsMac& channel, std::size_t s0, const CodeTree& tree1,
                    const CodeTree& tree2, const FeedbackFn& f1, const FeedbackFn& f2,
                    std::mt19937_64& rng) {
  if (tree1.depth() != tree2.depth()) throw InputError("code trees have different depths");
  if (s0 >= channel.states().size()) throw InputError("initial state out of range");
  const std::size_t n = tree1.depth();
  const std::size_t ns = channel.states().size();
  Trajectory t;
  std::vector<Symbol> z1, z2;
  std::size_t s = s0;
  for (std::size_t i = 0; i < n; ++i) {
    const Symbol x1 = tree1.symbol(i, z1);
    const Symbol x2 = tree2.symbol(i, z2);
    const std::size_t k = sample_index(channel.row(x1, x2, s), uniform01(rng));
    const auto y = static_cast<Symbol>(k / ns);
    s = k % ns;
    t.x1.push_back(x1);
    t.x2.push_back(x2);
    t.y.push_back(y);
    z1.push_back(f1(y));
    z2.push_back(f2(y));
  }
  return t;
}

std::pair<std::size_t, std::size_t> ml_decode(std::span<const Symbol> y, const CodeBook& book1,
                                              const CodeBook& book2, const FeedbackFn& f1,
                                              const FeedbackFn& f2,
                                              const SequenceLikelihood& law) {
  std::vector<Symbol> z1, z2;
  for (Symbol v : y) {
    z1.push_back(f1(v));
    z2.push_back(f2(v));
  }
  std::vector<std::vector<Symbol>> p1, p2;
  for (const auto& t : book1.trees) p1.push_back(t.path(z1));
  for (const auto& t : book2.trees) p2.push_back(t.path(z2));
  std::pair<std::size_t, std::size_t> best{0, 0};
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < p1.size(); ++a) {
    for (std::size_t b = 0; b < p2.size(); ++b) {
      const double score = law.log_probability(p1[a], p2[b], y);
      if (score > best_score) {
        best_score = score;
        best = {a, b};
      }
    }
  }
  return best;
}

double ml_union_bound(int type, std::size_t M1, std::size_t M2, double rho,
                    const PolicyWeights& weights, const CausalChannelLaw& law) {
  if (type < 1 || type > 3) throw InputError(fmt::format("error type {} not in 1..3", type));
  if (M1 == 0 || M2 == 0) throw InputError("message counts must be >= 1");
  const double a = static_cast<double>(M1 - 1);
  const double b = static_cast<double>(M2 - 1);
  const double prefactor = type == 1 ? a : type == 2 ? b : a * b;
  const double scale = std::pow(prefactor, rho);
  if (scale == 0.0) return 0.0;
  return scale * std::exp2(gallager_log2_sum(static_cast<ErrorType>(type), rho, weights, law));
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

/// Exact bounds are attempted only up to this many tensor cells.
constexpr std::size_t kExactBoundCells = std::size_t{1} << 20;

struct TrialOutcome {
  int kind = 0;  // 0 correct, 1..3 error type
};

}  // namespace

SimResult run_ensemble(const FsMac& channel, const InputPolicies& policies,
                       const SimConfig& config) {
  if (config.n == 0 || config.K == 0) throw InputError("n and K must be >= 1");
  if (config.trials == 0) throw InputError("trials must be >= 1");
  if (config.M1 == 0 || config.M2 == 0) throw InputError("message counts must be >= 1");
  if (policies.depth() != config.n) {
    throw InputError(fmt::format("policy depth {} does not match n = {}", policies.depth(),
                                 config.n));
  }
  if (config.s0.kind == S0Mode::Kind::Worst) {
    throw InputError("simulation needs a given or stationary initial state");
  }
  const std::size_t N = config.N();
  const std::size_t ns = channel.states().size();
  std::vector<double> s0_weights(ns, 0.0);
  if (config.s0.kind == S0Mode::Kind::Given) {
    if (config.s0.state >= ns) throw InputError("initial state out of range");
    s0_weights[config.s0.state] = 1.0;
  } else {
    s0_weights = initial_state_distribution(channel);
  }
  // Validates the policies against the channel alphabets.
  (void)policy_weights(policies,
                       BlockShape(channel.in1(), channel.in2(), channel.out(), config.n));
  const CausalKernel q1 = policies.q1.repeated(config.K);
  const CausalKernel q2 = policies.q2.repeated(config.K);
  const SequenceLikelihood likelihood(channel, s0_weights);

  std::vector<TrialOutcome> outcomes(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(static_cast<std::uint64_t>(t))));
    const CodeBook b1 = sample_code_trees(q1, config.M1, rng);
    const CodeBook b2 = sample_code_trees(q2, config.M2, rng);
    const auto m1 = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(config.M1));
    const auto m2 = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(config.M2));
    const std::size_t s0 = config.s0.kind == S0Mode::Kind::Given
                               ? config.s0.state
                               : sample_index(s0_weights, uniform01(rng));
    const Trajectory tr = transmit(channel, s0, b1.trees[m1], b2.trees[m2], policies.f1,
                                   policies.f2, rng);
    const auto [d1, d2] = ml_decode(tr.y, b1, b2, policies.f1, policies.f2, likelihood);
    const bool e1 = d1 != m1;
    const bool e2 = d2 != m2;
    outcomes[t].kind = e1 && e2 ? 3 : e1 ? 1 : e2 ? 2 : 0;
  });

  SimResult r;
  r.config = config;
  r.s0_label = config.s0.label();
  r.trials = config.trials;
  for (const auto& o : outcomes) {
    if (o.kind == 0) {
      ++r.correct;
    } else {
      ++r.errors[o.kind - 1];
    }
  }
  const double trials = static_cast<double>(config.trials);
  for (int i = 0; i < 3; ++i) {
    r.rates[i] = static_cast<double>(r.errors[i]) / trials;
    r.intervals[i] = wilson_interval(r.errors[i], config.trials);
  }
  const std::size_t wrong = config.trials - r.correct;
  r.pe = static_cast<double>(wrong) / trials;
  r.pe_interval = wilson_interval(wrong, config.trials);

  const std::vector<double> grid = default_rho_grid();
  const bool possible[3] = {config.M1 > 1, config.M2 > 1, config.M1 > 1 && config.M2 > 1};
  const double rate1 = std::log2(static_cast<double>(config.M1)) / static_cast<double>(N);
  const double rate2 = std::log2(static_cast<double>(config.M2)) / static_cast<double>(N);
  const double rates[3] = {rate1, rate2, rate1 + rate2};
  for (int i = 0; i < 3; ++i) {
    if (!possible[i]) {
      r.exponent_bound[i] = 0.0;
      continue;
    }
    const ExponentEval curve =
        exponent_curve(static_cast<ErrorType>(i + 1), policies, channel, config.n, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double b = error_bound(N, rates[i], grid[k], curve.F[k], ns);
      if (b < r.exponent_bound[i]) {
        r.exponent_bound[i] = b;
        r.exponent_bound_rho[i] = grid[k];
      }
    }
  }

  const double cells = std::pow(static_cast<double>(channel.in1().size() *
                                                    channel.in2().size() * channel.out().size()),
                                static_cast<double>(N));
  if (cells <= static_cast<double>(std::min(kExactBoundCells, max_cells()))) {
    InputPolicies full{q1, q2, policies.f1, policies.f2};
    const auto law = channel_causal_law(channel, s0_weights, N, r.s0_label);
    const PolicyWeights w = policy_weights(full, law.shape());
    for (int i = 0; i < 3; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (double rho : grid) {
        const double b = ml_union_bound(i + 1, config.M1, config.M2, rho, w, law);
        if (b < best) {
          best = b;
          r.exact_bound_rho[i] = rho;
        }
      }
      r.exact_bound[i] = best;
    }
  }
  return r;
}

}  // namespace dimac
