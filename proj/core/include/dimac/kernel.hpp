#pragma once

#include <memory>
#include <span>
#include <vector>

#include "dimac/alphabet.hpp"

namespace dimac {

/// Causal input policy Q(x^n || z^{n-1}) = prod_i Q(x_i | x^{i-1}, z^{i-1}),
/// i.e. the distribution of a random code-tree.
///
/// A kernel is a concatenation of one or more blocks. Each block holds a dense
/// table of rows keyed by (local time j, local x history, local z history);
/// histories restart at every block boundary, which is the concatenation rule
/// used to build long code-trees out of short ones.
class CausalKernel {
 public:
  /// Row storage for one block: for local step j (0-based) there are
  /// (|X||Z|)^j rows of width |X|, ordered by (x history code, z history code).
  struct Block {
    std::size_t depth = 0;
    std::vector<std::size_t> offsets;  // start of step j within `table`
    std::vector<double> table;
  };

  /// Full table constructor. `table` lists, for j = 0..depth-1, the rows for
  /// every (x^{j}, z^{j}) pair in code order. Rows are validated and
  /// renormalized.
  CausalKernel(Alphabet input, Alphabet feedback, std::size_t depth, std::vector<double> table);

  /// Same pmf at every step regardless of history.
  static CausalKernel iid(Alphabet input, Alphabet feedback, std::size_t depth,
                          std::vector<double> pmf);
  static CausalKernel uniform(Alphabet input, Alphabet feedback, std::size_t depth);
  /// One pmf per step, history independent.
  static CausalKernel time_varying(Alphabet input, Alphabet feedback,
                                   const std::vector<std::vector<double>>& pmfs);
  /// Rows keyed by (step, z history) only; `rows[j]` has |Z|^j pmfs.
  static CausalKernel feedback_driven(Alphabet input, Alphabet feedback,
                                      const std::vector<std::vector<std::vector<double>>>& rows);

  /// Code-tree concatenation: this kernel followed by `next`.
  CausalKernel then(const CausalKernel& next) const;
  /// `times`-fold concatenation of this kernel with itself.
  CausalKernel repeated(std::size_t times) const;

  Alphabet input() const noexcept { return input_; }
  Alphabet feedback() const noexcept { return feedback_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }

  /// Row Q(. | x^{i}, z^{i}) for 0-based time i; the spans hold the full past
  /// (length >= i, only the first i entries are read).
  std::span<const double> row(std::size_t i, std::span<const Symbol> past_x,
                              std::span<const Symbol> past_z) const;

  /// Q(x^n || z^{n-1}); `z` must have at least n-1 entries.
  double path_probability(std::span<const Symbol> x, std::span<const Symbol> z) const;

  /// True when every row of every step is identical (no history dependence).
  bool history_independent() const;
  /// True when no row depends on the feedback history.
  bool feedback_independent() const;

 private:
  CausalKernel(Alphabet input, Alphabet feedback) : input_(input), feedback_(feedback) {}
  void locate(std::size_t i, std::size_t& block, std::size_t& local, std::size_t& start) const;

  Alphabet input_;
  Alphabet feedback_;
  std::size_t depth_ = 0;
  std::vector<std::shared_ptr<const Block>> blocks_;
  std::vector<std::size_t> block_start_;
};

}  // namespace dimac
