#pragma once

#include <span>
#include <string>
#include <vector>

#include "dimac/alphabet.hpp"
#include "dimac/fsmac.hpp"

namespace dimac {

/// P(y^n || x1^n, x2^n) for a fixed initial-state weighting, as a dense
/// tensor over BlockShape. Each (x1^n, x2^n) row is a pmf over y^n.
class CausalChannelLaw {
 public:
  CausalChannelLaw(BlockShape shape, std::vector<double> tensor, std::string s0_label);

  const BlockShape& shape() const noexcept { return shape_; }
  std::size_t n() const noexcept { return shape_.n(); }
  double operator()(std::size_t c1, std::size_t c2, std::size_t cy) const {
    return tensor_[shape_.index(c1, c2, cy)];
  }
  const std::vector<double>& tensor() const noexcept { return tensor_; }
  const std::string& s0_label() const noexcept { return s0_label_; }

  /// Max over rows of |sum_y P - 1|.
  double max_row_error() const;
  /// Max violation of the causal factorization: the per-step conditional of
  /// y_i may not depend on future inputs.
  double causality_violation() const;

 private:
  BlockShape shape_;
  std::vector<double> tensor_;
  std::string s0_label_;
};

/// Law started from an explicit weighting over initial states.
CausalChannelLaw channel_causal_law(const FsMac& channel, std::span<const double> s0_weights,
                                    std::size_t n, std::string label);

/// Law for a single initial state or the stationary/declared initial
/// distribution. S0Mode::worst() is not a law and raises InputError.
CausalChannelLaw channel_causal_law(const FsMac& channel, const S0Mode& mode, std::size_t n);

/// One law per initial state.
std::vector<CausalChannelLaw> per_state_laws(const FsMac& channel, std::size_t n);

/// Pointwise forward recursion for sequences of arbitrary length, using the
/// same per-step arithmetic as the tensor builder.
class SequenceLikelihood {
 public:
  SequenceLikelihood(const FsMac& channel, std::vector<double> s0_weights);

  /// P(y^N || x1^N, x2^N).
  double probability(std::span<const Symbol> x1, std::span<const Symbol> x2,
                     std::span<const Symbol> y) const;
  double log_probability(std::span<const Symbol> x1, std::span<const Symbol> x2,
                         std::span<const Symbol> y) const;

 private:
  const FsMac* channel_;
  std::vector<double> weights_;
};

/// alpha'(s') = sum_s alpha(s) P(y, s' | x1, x2, s), s summed in increasing
/// order. Shared by the tensor builder and SequenceLikelihood so both follow
/// the same arithmetic path.
void forward_step(const FsMac& channel, std::span<const double> alpha, Symbol x1, Symbol x2,
                  Symbol y, std::span<double> next);

}  // namespace dimac
