#pragma once

#include <vector>

#include "dimac/channels.hpp"
#include "dimac/joint_law.hpp"

namespace dimac {

/// Per-step directed-information terms, all in bits.
struct DirInfoBreakdown {
  std::size_t n = 0;
  std::vector<double> per_step;
  double total = 0.0;
  /// The same quantity computed as E[log P(Y||...) / P(Y||...)].
  double expectation_form = 0.0;
};

enum class Source { X1, X2, X1X2 };

/// I(X^n -> Y^n) = sum_i I(X^i; Y_i | Y^{i-1}) for X = X1, X2 or (X1, X2).
DirInfoBreakdown directed_info(const JointLaw& joint, Source source);

/// I(X_a^n -> Y^n || X_b^n) = sum_i I(X_a^i; Y_i | X_b^i, Y^{i-1}); the
/// conditioning user is the other one. Source must be X1 or X2.
DirInfoBreakdown directed_info_cc(const JointLaw& joint, Source source);

/// Bit mask over the three blocks for mutual_info.
enum VarSet : unsigned { kNone = 0, kX1 = 1, kX2 = 2, kY = 4 };

/// Classical I(A; B | C) over whole blocks, in bits.
double mutual_info(const JointLaw& joint, unsigned a, unsigned b, unsigned given = kNone);

/// I(A; B | C) for prefix marginals: `abc`, `ac`, `bc`, `c` must be nested
/// prefix truncations of one another.
double conditional_mutual_info(const JointLaw& joint, PrefixLengths abc, PrefixLengths ac,
                               PrefixLengths bc, PrefixLengths c);

/// Directed-information quantity selected for a pentagon bound.
enum class Bound { R1, R2, Sum };

/// The three pentagon quantities for one joint, in bits (not normalized).
struct InfoTriple {
  double i1 = 0.0;   // I(X1 -> Y || X2)
  double i2 = 0.0;   // I(X2 -> Y || X1)
  double i12 = 0.0;  // I((X1, X2) -> Y)
};

/// Fast path over precomputed weights: the causal-conditioning functional
/// for i1, i2 and the log-ratio form for i12.
InfoTriple info_triple(const PolicyWeights& weights, const CausalChannelLaw& law);

/// Only I((X1, X2)^n -> Y^n), in bits.
double sum_directed_info(const PolicyWeights& weights, const CausalChannelLaw& law);

/// Causal-conditioning functional I(Q1 Q2; P) with user `source` as the
/// transmitter whose input is averaged in the denominator:
/// sum Q1 Q2 P log(P / sum_{x'} Q(x') P). Bits.
double functional_I(const PolicyWeights& weights, const CausalChannelLaw& law, Source source);
double functional_I(const InputPolicies& policies, const CausalChannelLaw& law, Source source);

/// Per-initial-state directed information (Source::X1/X2 causally conditioned
/// on the other user, X1X2 plain).
struct StateConditionedInfo {
  std::vector<double> per_state;     // I(... | s0) for each s0
  std::vector<double> weights;       // initial-state weights used for averaging
  double conditioned = 0.0;          // sum_s w(s) I(... | s), i.e. I(... | S)
  double mixture = 0.0;              // I(...) under the averaged law
  double min = 0.0;
  double max = 0.0;
  double state_entropy = 0.0;        // H(S) under `weights`, bits
};

StateConditionedInfo directed_info_given_state(const InputPolicies& policies,
                                               const FsMac& channel, Source source,
                                               std::span<const double> s0_weights);
/// Uses initial_state_distribution(channel) as weights.
StateConditionedInfo directed_info_given_state(const InputPolicies& policies,
                                               const FsMac& channel, Source source);

/// Residual max |P(x1^n, y^n) - Q(x1^n || y^{n-1}) P(y^n || x1^n)| and its
/// x2-causally-conditioned analogue on positive-probability rows.
struct FactorizationResidual {
  double plain = 0.0;
  double conditioned = 0.0;
};
FactorizationResidual factorization_residual(const JointLaw& joint);

/// Zero-capacity diagnosis: uniform-input test, input-independence of the
/// causal law and the maximum over a feedback-policy grid.
struct ZeroRegionVerdict {
  double uniform_value = 0.0;   // max over s0 of I((X1,X2)^n -> Y^n), bits
  bool zero = false;            // uniform_value <= zero_tol
  double max_deviation = 0.0;   // max |P(y^n||x^n, s0) - P(y^n | s0)|
  double grid_max = 0.0;        // max over the policy grid and s0
  std::size_t grid_points = 0;
};

struct ZeroCheckOptions {
  std::size_t resolution = 8;
  double zero_tol = 1e-12;
  /// Stop the grid sweep once this value is exceeded (0 disables).
  double early_exit_above = 0.0;
  std::size_t max_pairs = 2'000'000;
};

ZeroRegionVerdict zero_region_check(const FsMac& channel, std::size_t n,
                                    const ZeroCheckOptions& options = {});

/// Sandwich bounds on the entropy rate of hidden-Markov noise started from
/// its stationary state law: lower = H(V_n | V^{n-1}, S_0), upper =
/// H(V_n | V^{n-1}). Bits per symbol.
struct EntropyRateBounds {
  double lower = 0.0;
  double upper = 0.0;
};
EntropyRateBounds entropy_rate_bounds(const NoiseChain& noise, std::size_t n);

/// H(V^n) in bits for the noise started from the given state weights.
double noise_block_entropy(const NoiseChain& noise, std::span<const double> s0_weights,
                           std::size_t n);

/// |I((X1,X2)^n -> Y^n) - (n - H(V^n))| at uniform iid inputs and stationary
/// initial state for a binary additive channel driven by `noise`.
struct SumRateIdentity {
  double directed_info = 0.0;
  double noise_entropy = 0.0;
  double residual = 0.0;
};
SumRateIdentity ge_sumrate_identity_check(const FsMac& channel, const NoiseChain& noise,
                                          std::size_t n);

}  // namespace dimac
