#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dimac/fsmac.hpp"

namespace dimac {

/// Hidden-Markov noise: V_i is emitted by the state S_{i-1}, which then moves
/// to S_i. `emission` is row-major (state, symbol).
struct NoiseChain {
  MarkovChain chain;
  std::size_t arity = 2;
  std::vector<double> emission;

  double emit(std::size_t s, std::size_t v) const { return emission[s * arity + v]; }

  static NoiseChain iid(std::vector<double> pmf);
  static NoiseChain bernoulli(double p);
  static NoiseChain gilbert_elliott(double alpha, double beta, double p_good, double p_bad);
  void validate() const;
};

/// Two-state Markov chain with P(0->1) = alpha and P(1->0) = beta.
MarkovChain two_state_chain(double alpha, double beta);

/// Good/bad additive binary MAC; state 0 is good, state 1 is bad.
FsMac gilbert_elliott_mac(double alpha, double beta, double p_good, double p_bad);

/// y = x1 + x2 + v (mod q) with v drawn from the noise chain.
FsMac additive_modq_mac(std::size_t q, const NoiseChain& noise);

/// Multiplexer table x0 = mux[x1][x2] over a common alphabet.
struct MuxTable {
  std::size_t q = 2;
  std::vector<Symbol> table;  // row-major (x1, x2)

  Symbol operator()(Symbol x1, Symbol x2) const {
    return table[static_cast<std::size_t>(x1) * q + static_cast<std::size_t>(x2)];
  }
  static MuxTable from(std::size_t q, const std::function<Symbol(Symbol, Symbol)>& f);
  static MuxTable xor_table(std::size_t q = 2);  // addition mod q
};

/// Result of the multiplexer property check; `failed_user` is 1 or 2 when
/// some user cannot be made transparent by fixing the other input.
struct MuxCheck {
  bool ok = true;
  int failed_user = 0;
  std::optional<Symbol> fixing1;  // x2 value making x0 = x1
  std::optional<Symbol> fixing2;  // x1 value making x0 = x2
};
MuxCheck check_multiplexer(const MuxTable& mux);

/// P(y, s' | x1, x2, s) = P_p2p(y, s' | mux(x1, x2), s). Throws InputError
/// with the witness user when the multiplexer property fails.
FsMac mux_p2p_compose(const MuxTable& mux, const FsMac& p2p);

/// Single-user erasure channel driven by a two-state chain z: z = 0 passes
/// the input, z = 1 outputs the erasure symbol q.
FsMac erasure_p2p(std::size_t q, const MarkovChain& z_chain);

/// Binary symmetric / general memoryless single-user channel from a
/// row-major |X| x |Y| matrix.
FsMac memoryless_p2p(std::size_t inputs, std::size_t outputs, std::vector<double> matrix);

/// Memoryless MAC from a row-major (x1, x2, y) matrix.
FsMac memoryless_mac(std::size_t in1, std::size_t in2, std::size_t outputs,
                     std::vector<double> matrix);

/// Channel with limited intersymbol interference: exogenous chain z and
/// output kernel P(y_i | z_{i-1}, x1_{i-m..i}, x2_{i-m..i}).
struct LimitedIsiSpec {
  std::size_t m = 0;
  std::size_t in1 = 2;
  std::size_t in2 = 2;
  std::size_t outputs = 2;
  MarkovChain z_chain;
  /// Row-major (z, x1 window, x2 window, y); windows of length m+1 coded
  /// oldest symbol first.
  std::vector<double> output;
  /// pmf over (x1 window, x2 window) of length m, oldest first. Empty for m=0.
  std::vector<double> initial_window;
};

/// Upper bound on composite state spaces built by limited_isi_to_fsmac.
inline constexpr std::size_t kMaxCompositeStates = 4096;

/// State is (z_{i-1}, x1_{i-m..i-1}, x2_{i-m..i-1}) coded as
/// (z * |X1|^m + w1) * |X2|^m + w2. The initial distribution is the
/// stationary z law times the initial window pmf.
FsMac limited_isi_to_fsmac(const LimitedIsiSpec& spec);

struct FactorizationReport {
  bool markov = false;
  /// Max over (x, s, s') of |P(s'|x,s) - P(s'|x',s)| combined with the
  /// max factorization residual |P(y,s'|x,s) - P(s'|s)P(y|x,s)|.
  double max_violation = 0.0;
};

/// Checks P(y, s' | x1, x2, s) = P(s' | s) P(y | x1, x2, s).
FactorizationReport markov_factorization_check(const FsMac& channel, double tol = 1e-12);

struct IndecomposabilityReport {
  bool indecomposable = false;
  double spread = 0.0;
};

/// max |P(s_n | x^n, s0) - P(s_n | x^n, s0')| over all inputs, states and
/// initial states, compared against eps.
IndecomposabilityReport indecomposability_diagnostic(const FsMac& channel, std::size_t n,
                                                     double eps);

}  // namespace dimac
