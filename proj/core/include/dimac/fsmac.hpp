#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dimac/alphabet.hpp"

namespace dimac {

/// Finite-state multiple-access channel P(y, s' | x1, x2, s).
///
/// The kernel is stored row-major over (x1, x2, s_prev, y, s); every
/// (x1, x2, s_prev) row is a pmf over (y, s). A single-user channel is an
/// FsMac whose second input alphabet has one symbol.
class FsMac {
 public:
  FsMac(Alphabet states, Alphabet in1, Alphabet in2, Alphabet out, std::vector<double> kernel,
        std::optional<std::vector<double>> initial_dist = std::nullopt);

  Alphabet states() const noexcept { return states_; }
  Alphabet in1() const noexcept { return in1_; }
  Alphabet in2() const noexcept { return in2_; }
  Alphabet out() const noexcept { return out_; }
  bool single_user() const noexcept { return in2_.size() == 1; }

  /// pmf over (y, s') laid out as y * |S| + s'.
  std::span<const double> row(Symbol x1, Symbol x2, std::size_t s) const {
    const std::size_t w = out_.size() * states_.size();
    return {kernel_.data() + ((static_cast<std::size_t>(x1) * in2_.size() +
                               static_cast<std::size_t>(x2)) * states_.size() + s) * w,
            w};
  }
  double prob(Symbol x1, Symbol x2, std::size_t s, Symbol y, std::size_t s_next) const {
    return row(x1, x2, s)[static_cast<std::size_t>(y) * states_.size() + s_next];
  }

  const std::vector<double>& kernel() const noexcept { return kernel_; }
  const std::optional<std::vector<double>>& initial_dist() const noexcept { return initial_; }

  /// Same channel with a different declared initial distribution.
  FsMac with_initial_dist(std::optional<std::vector<double>> dist) const;

 private:
  Alphabet states_, in1_, in2_, out_;
  std::vector<double> kernel_;
  std::optional<std::vector<double>> initial_;
};

/// How the initial state is treated when building a channel law.
struct S0Mode {
  enum class Kind { Given, Worst, Stationary };
  Kind kind = Kind::Stationary;
  std::size_t state = 0;

  static S0Mode given(std::size_t s) { return {Kind::Given, s}; }
  static S0Mode worst() { return {Kind::Worst, 0}; }
  static S0Mode stationary() { return {Kind::Stationary, 0}; }
  /// Parses "given:ID", "worst" or "stationary".
  static S0Mode parse(const std::string& text);
  std::string label() const;
};

/// Row-stochastic matrix of a finite Markov chain, stored row-major.
struct MarkovChain {
  std::size_t states = 0;
  std::vector<double> transition;

  double at(std::size_t from, std::size_t to) const { return transition[from * states + to]; }
};

/// Stationary pmf of an irreducible aperiodic chain. Throws DomainError for
/// reducible or periodic chains.
std::vector<double> stationary_distribution(const MarkovChain& chain);

/// Input-independent state chain P(s'|s), or nullopt when the state
/// transition depends on the inputs (beyond `tol`).
std::optional<MarkovChain> state_chain(const FsMac& channel, double tol = 1e-12);

/// Declared initial distribution if present, otherwise the stationary
/// distribution of the input-independent state chain. Throws DomainError if
/// neither exists.
std::vector<double> initial_state_distribution(const FsMac& channel);

}  // namespace dimac
