#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dimac/channel_law.hpp"
#include "dimac/joint_law.hpp"

namespace dimac {

/// 64-bit mixing function used to derive independent streams.
std::uint64_t splitmix64(std::uint64_t x);
/// Uniform double in [0, 1) from 53 random bits.
double uniform01(std::mt19937_64& rng);
/// Draws an index from a pmf.
std::size_t sample_index(std::span<const double> pmf, double u);

/// A random code-tree drawn from a causal kernel. Labels are a pure function
/// of (seed, node), so the tree is complete but only evaluated on the paths
/// that are visited. A kernel that ignores feedback yields a plain codeword:
/// its labels do not depend on z.
class CodeTree {
 public:
  CodeTree(const CausalKernel* kernel, std::uint64_t seed)
      : kernel_(kernel), seed_(seed), uses_feedback_(!kernel->feedback_independent()) {}

  std::size_t depth() const { return kernel_->depth(); }
  /// Label at 0-based time i after feedback history z^{i}.
  Symbol symbol(std::size_t i, std::span<const Symbol> past_z) const;
  /// Inputs x^N along the feedback path z (length >= N-1).
  std::vector<Symbol> path(std::span<const Symbol> z) const;

 private:
  std::uint64_t label_hash(std::size_t i, std::span<const Symbol> z) const;

  const CausalKernel* kernel_;
  std::uint64_t seed_;
  bool uses_feedback_;
};

struct CodeBook {
  std::vector<CodeTree> trees;
  double rate(std::size_t N) const;  // log2(M) / N
};

/// M independent trees for the concatenated kernel.
CodeBook sample_code_trees(const CausalKernel& concatenated, std::size_t M, std::mt19937_64& rng);

struct Trajectory {
  std::vector<Symbol> x1;
  std::vector<Symbol> x2;
  std::vector<Symbol> y;
};

/// Runs the channel from state s0; z_{l,i} = f_l(y_i) reaches encoder l one
/// step later.
Trajectory transmit(const FsMac& channel, std::size_t s0, const CodeTree& tree1,
                    const CodeTree& tree2, const FeedbackFn& f1, const FeedbackFn& f2,
                    std::mt19937_64& rng);

/// Maximum-likelihood pair; ties go to the lowest (m1, m2) in lexicographic
/// order. Messages are 0-based.
std::pair<std::size_t, std::size_t> ml_decode(std::span<const Symbol> y, const CodeBook& book1,
                                              const CodeBook& book2, const FeedbackFn& f1,
                                              const FeedbackFn& f2,
                                              const SequenceLikelihood& law);

/// Exact union bound on E[P_ei | m1, m2] for one rho:
/// prefactor^rho * 2^{gallager_log2_sum}, with prefactor M1-1, M2-1 and
/// (M1-1)(M2-1) for types 1, 2, 3.
double ml_union_bound(int type, std::size_t M1, std::size_t M2, double rho,
                    const PolicyWeights& weights, const CausalChannelLaw& law);

struct SimConfig {
  std::size_t n = 1;
  std::size_t K = 1;
  std::size_t M1 = 2;
  std::size_t M2 = 2;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  S0Mode s0 = S0Mode::stationary();
  std::size_t threads = 1;
  std::size_t N() const { return n * K; }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// 95% Wilson score interval.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

struct SimResult {
  SimConfig config;
  std::string s0_label;
  std::size_t trials = 0;
  std::size_t correct = 0;
  std::size_t errors[3] = {0, 0, 0};
  double rates[3] = {0.0, 0.0, 0.0};
  Interval intervals[3];
  double pe = 0.0;
  Interval pe_interval;
  /// Exact ML union bound at block length N minimized over the rho grid;
  /// absent when N exceeds the exact-summation budget.
  std::optional<double> exact_bound[3];
  double exact_bound_rho[3] = {0.0, 0.0, 0.0};
  /// |S| 2^{-N(F_n - rho R_i)} minimized over the rho grid.
  double exponent_bound[3] = {1.0, 1.0, 1.0};
  double exponent_bound_rho[3] = {0.0, 0.0, 0.0};
};

/// Monte Carlo over the random code-tree ensemble built from `policies`
/// (depth n, concatenated K times).
SimResult run_ensemble(const FsMac& channel, const InputPolicies& policies,
                       const SimConfig& config);

}  // namespace dimac
