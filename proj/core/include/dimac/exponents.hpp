#pragma once

#include <vector>

#include "dimac/channels.hpp"
#include "dimac/joint_law.hpp"

namespace dimac {

/// Error types of a two-user decoder: 1 = only m1 wrong, 2 = only m2 wrong,
/// 3 = both wrong.
enum class ErrorType { One = 1, Two = 2, Three = 3 };

/// log2 of the Gallager triple sum for error type i,
///   type 1: sum_{y,x2} Q2 [sum_{x1} Q1 P^{1/(1+rho)}]^{1+rho}
/// (and symmetrically), evaluated in the log domain.
double gallager_log2_sum(ErrorType type, double rho, const PolicyWeights& weights,
                         const CausalChannelLaw& law);

/// E_{N,i}(rho, Q_N, s0) = -(1/N) log2 of the triple sum; the law fixes s0.
/// At rho = 0 the sum is a total probability and E is returned as exactly 0.
double gallager_E(ErrorType type, double rho, const PolicyWeights& weights,
                  const CausalChannelLaw& law);
double gallager_E(ErrorType type, double rho, const InputPolicies& policies,
                  const CausalChannelLaw& law);

/// F_{N,i}(rho) = min_{s0} E_{N,i}(rho, s0) - rho log2|S| / N.
double gallager_F(ErrorType type, double rho, const InputPolicies& policies,
                  const FsMac& channel, std::size_t N);

/// |S| 2^{-N(F - rho R)}.
double error_bound(std::size_t N, double rate, double rho, double F, std::size_t num_states);

/// Default rho grid: 0, 0.05, ..., 1.
std::vector<double> default_rho_grid();

/// Sampled exponent curves for one error type.
struct ExponentEval {
  ErrorType type = ErrorType::One;
  std::size_t N = 0;
  std::vector<double> rho;
  std::vector<std::vector<double>> E;  // E[k][s0]
  std::vector<double> F;
};
ExponentEval exponent_curve(ErrorType type, const InputPolicies& policies, const FsMac& channel,
                            std::size_t N, const std::vector<double>& rho_grid);

struct AchievabilityVerdict {
  bool certified = false;
  double rho = 0.0;
  double margins[3] = {0.0, 0.0, 0.0};  // F_{n,i}(rho) - rho R_i
  bool vacuous[3] = {false, false, false};
};

/// Certifies (R1, R2) when some grid rho makes every non-vacuous margin
/// F_{n,i}(rho) - rho R_i strictly positive. Type i is vacuous when its
/// error event is impossible (R1 = 0 rules out types 1 and 3, R2 = 0 rules
/// out types 2 and 3). By concatenation the certificate carries over to every
/// N = nK.
AchievabilityVerdict exponent_achievability(double r1, double r2, const InputPolicies& policies,
                                            const FsMac& channel, std::size_t n,
                                            const std::vector<double>& rho_grid);

struct ExponentShapeReport {
  double e_at_zero = 0.0;
  double slope_at_zero = 0.0;     // extrapolated forward difference
  double info_over_N = 0.0;       // matching per-state directed information / N
  bool slope_matches = false;     // |slope - info/N| <= 1e-4
  bool nondecreasing = false;     // E nondecreasing over the grid (slack 1e-10)
  double min_increment = 0.0;
  int convex_steps = 0;           // second differences > 1e-12
  int concave_steps = 0;          // second differences < -1e-12
};

/// Checks the exponent properties at initial state s0.
ExponentShapeReport exponent_shape(ErrorType type, const InputPolicies& policies,
                                   const FsMac& channel, std::size_t N, std::size_t s0,
                                   const std::vector<double>& rho_grid);

/// F_{n+l}(Q_n then Q_l) - [n F_n(Q_n) + l F_l(Q_l)] / (n+l).
double F_supadditivity_margin(ErrorType type, const InputPolicies& block_n,
                              const InputPolicies& block_l, const FsMac& channel, double rho);

/// Concatenates the kernels of two policy blocks (feedback maps must agree).
InputPolicies concatenate(const InputPolicies& first, const InputPolicies& second);

}  // namespace dimac
